//! Element literals: signed rational coefficients times monomials in
//! generator symbols, e.g. `1/2*r^2 - z + 3` or `(1 + z)^2`.
//!
//! Parsing produces a sparse polynomial in an ordered list of variables; the
//! caller reduces it into a tower (or reads it as a polynomial in one extra
//! variable, which is how minimal polynomials are entered).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

/// Sparse multivariate polynomial: exponent vector -> coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly {
    nvars: usize,
    pub(crate) terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

/// Parses `src` as a polynomial in `vars`.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<SparsePoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty literal"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?.as_constant().ok_or(Error::Parse {
                        pos: at,
                        msg: "division is only allowed by rational constants".into(),
                    })?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&d.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        self.skip_ws();
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                SparsePoly::constant(self.vars.len(), BigRational::from_integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
                SparsePoly::variable(self.vars.len(), idx)
            }
            Some(c) if c == b'-' || c == b'+' => {
                // allow `2*-r`
                self.pos += 1;
                let f = self.factor()?;
                if c == b'-' {
                    f.neg()
                } else {
                    f
                }
            }
            _ => return Err(self.err("expected a number, generator or `(`")),
        };
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(Error::Parse { pos: at, msg: "exponent out of range".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_mixed_literal() {
        let p = parse_poly("1/2*r^2 - z + 3", &["r", "z"]).unwrap();
        let terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![(vec![0, 0], q(3, 1)), (vec![0, 1], q(-1, 1)), (vec![2, 0], q(1, 2))]
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_poly("1/2*r^2-z+3", &["r", "z"]).unwrap();
        let b = parse_poly("  1 / 2 * r ^ 2   -   z + 3 ", &["r", "z"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parentheses_and_powers() {
        let p = parse_poly("(1 + z)^2 - z^2 - 2*z", &["z"]).unwrap();
        assert_eq!(p, SparsePoly::constant(1, q(1, 1)));
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = parse_poly("r - r", &["r"]).unwrap();
        assert!(p.terms.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("r + w", &["r"]),
            Err(Error::UnknownSymbol("w".into()))
        );
        assert!(matches!(parse_poly("r +", &["r"]), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("r / r", &["r"]), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", &["r"]), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_poly("1/0", &[]), Err(Error::Parse { .. })));
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("r"));
        assert!(is_identifier("zeta_3"));
        assert!(!is_identifier("3z"));
        assert!(!is_identifier(""));
    }
}

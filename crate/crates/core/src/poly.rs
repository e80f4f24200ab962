//! Dense univariate polynomials over any [`Field`].

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::Field;

/// Coefficients low to high, with no trailing zeros (the zero polynomial has
/// no coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - c`
    pub fn linear(field: F, c: &F::Elem) -> Self {
        let coeffs = vec![field.neg(c), field.one()];
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.pivot_inv(lc);
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = other.coeffs.get(i).unwrap_or(&z);
                self.field.add(a, b)
            })
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &lc_inv);
            let shift = top - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, d));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| f.is_zero(x)) {
                rem.pop();
            }
        }
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `p(M)` for a square matrix `M`, by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Result<Matrix<F>> {
        let n = m.rows();
        if m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
        }
        let mut acc = Matrix::zeros(self.field.clone(), n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Polynomial<G>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(target, coeffs))
    }

    /// Renders with variable name `var`, highest degree first.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = self.field.format(c);
            let compound = cs.contains(" + ") || cs.contains(" - ");
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if mono.is_empty() {
                if compound { format!("({mag})") } else { mag }
            } else if mag == "1" {
                mono
            } else if compound {
                format!("({mag})*{mono}")
            } else {
                format!("{mag}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

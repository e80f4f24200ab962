//! Exact arithmetic in towers of simple extensions `Q(a1)(a2)...` with a
//! marked base subfield.
//!
//! Elements are dense rational coefficient vectors over the monomial basis
//! `a1^e1 * a2^e2 * ... * ak^ek` with `0 <= ei < deg(ai)`. Index order is
//! lexicographic in `(ek, ..., e1)`: the lowest generator varies fastest, so
//! an element of a prefix tower embeds by zero-padding its coefficients.
//!
//! Products of basis monomials are reduced once, when the tower is built, and
//! stored as structure constants; multiplication is then a bilinear sum.

mod embedding;
pub mod literal;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use embedding::{Embedding, EmbeddingReport};
use literal::{is_identifier, parse_poly, SparsePoly};

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::Field;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq)]
struct Level {
    symbol: String,
    degree: usize,
    /// Monic minimal polynomial, low to high; each coefficient is dense over
    /// the tower strictly below this level.
    minpoly: Vec<Vec<BigRational>>,
}

#[derive(Debug)]
struct TowerInner {
    levels: Vec<Level>,
    base_marker: usize,
    /// `prefix_degrees[j]` is the degree over Q of the first `j` levels.
    prefix_degrees: Vec<usize>,
    /// `table[i][j]` is the sparse product of basis monomials `i` and `j`.
    table: Vec<Vec<Vec<(usize, BigRational)>>>,
}

/// An algebraic number field presented as a tower over Q.
///
/// Cloning is cheap; the tower data is shared and immutable.
#[derive(Clone)]
pub struct FieldTower {
    inner: Arc<TowerInner>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base_marker == other.inner.base_marker
                && self.inner.levels == other.inner.levels)
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.levels.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q")?;
        for (j, lvl) in self.inner.levels.iter().enumerate() {
            let p = self.level_minpoly_string(j);
            write!(f, "({}: {})", lvl.symbol, p)?;
        }
        write!(f, " base={}", self.inner.base_marker)
    }
}

impl FieldTower {
    /// The rational numbers: the empty tower.
    pub fn rationals() -> Self {
        Self::from_levels(Vec::new(), 0)
    }

    /// Builds a tower from `(symbol, minimal polynomial)` pairs.
    ///
    /// Each polynomial is written in its own symbol with coefficients in the
    /// earlier symbols, e.g. `[("r", "r^3 - 2"), ("z", "z^2 + z + 1")]`.
    /// Irreducibility is the caller's responsibility.
    pub fn new(levels: &[(&str, &str)], base_marker: usize) -> Result<Self> {
        if base_marker > levels.len() {
            return Err(Error::BaseMarkerOutOfRange { marker: base_marker, levels: levels.len() });
        }
        let mut tower = Self::rationals();
        for (symbol, poly) in levels {
            if !is_identifier(symbol) {
                return Err(Error::Parse { pos: 0, msg: format!("`{symbol}` is not an identifier") });
            }
            if tower.symbols().any(|s| s == *symbol) {
                return Err(Error::DuplicateSymbol(symbol.to_string()));
            }
            let mut vars: Vec<&str> = tower.symbols().collect();
            vars.push(symbol);
            let sparse = parse_poly(poly, &vars)?;
            let coeffs = tower.split_by_last_variable(&sparse)?;
            tower = tower.extend(symbol, coeffs)?;
        }
        Ok(tower.with_base_marker(base_marker))
    }

    /// Adjoins a root of `minpoly` (coefficients in this tower, low to high).
    pub fn extend(&self, symbol: &str, minpoly: Vec<FieldElement>) -> Result<Self> {
        let degree = minpoly.len().saturating_sub(1);
        if degree < 2 {
            return Err(Error::DegreeTooSmall { symbol: symbol.to_string(), degree });
        }
        if minpoly.iter().any(|c| c.tower != *self) {
            return Err(Error::FieldMismatch);
        }
        if !minpoly[degree].is_one() {
            return Err(Error::NonMonic { symbol: symbol.to_string() });
        }
        let mut levels = self.inner.levels.clone();
        levels.push(Level {
            symbol: symbol.to_string(),
            degree,
            minpoly: minpoly.into_iter().map(|c| c.coeffs).collect(),
        });
        Ok(Self::from_levels(levels, self.inner.base_marker))
    }

    /// Same tower with a different base subfield marker.
    pub fn with_base_marker(&self, base_marker: usize) -> Self {
        assert!(base_marker <= self.num_levels(), "base marker out of range");
        if base_marker == self.inner.base_marker {
            return self.clone();
        }
        Self::from_levels(self.inner.levels.clone(), base_marker)
    }

    fn from_levels(levels: Vec<Level>, base_marker: usize) -> Self {
        let mut prefix_degrees = vec![1usize];
        for l in &levels {
            prefix_degrees.push(prefix_degrees.last().unwrap() * l.degree);
        }
        let mut inner = TowerInner { levels, base_marker, prefix_degrees, table: Vec::new() };
        let d = *inner.prefix_degrees.last().unwrap();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let ei = inner.exponents(i);
                let ej = inner.exponents(j);
                let e: Vec<u32> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
                let mut sparse = BTreeMap::new();
                sparse.insert(e, BigRational::one());
                let dense = inner.reduce(sparse);
                let entry: Vec<(usize, BigRational)> = dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                table[j][i] = entry.clone();
                table[i][j] = entry;
            }
        }
        inner.table = table;
        Self { inner: Arc::new(inner) }
    }

    pub fn degree(&self) -> usize {
        *self.inner.prefix_degrees.last().unwrap()
    }

    pub fn num_levels(&self) -> usize {
        self.inner.levels.len()
    }

    pub fn base_marker(&self) -> usize {
        self.inner.base_marker
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.inner.levels.iter().map(|l| l.symbol.as_str())
    }

    /// Exponents `(e1, ..., ek)` of the basis monomial at `index`.
    pub fn basis_exponents(&self, index: usize) -> Vec<u32> {
        self.inner.exponents(index)
    }

    /// The minimal polynomial of `level` over the tower strictly below it.
    pub fn level_minpoly_below(&self, level: usize) -> Polynomial<FieldTower> {
        let prefix = self.prefix(level);
        let coeffs = self.inner.levels[level].minpoly.iter().map(|c| prefix.element(c.clone())).collect();
        Polynomial::new(prefix, coeffs)
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.inner.levels[level].degree
    }

    /// The tower formed by the first `levels` levels (base marker clamped).
    pub fn prefix(&self, levels: usize) -> Self {
        assert!(levels <= self.num_levels());
        if levels == self.num_levels() {
            return self.clone();
        }
        Self::from_levels(
            self.inner.levels[..levels].to_vec(),
            self.inner.base_marker.min(levels),
        )
    }

    /// The marked base subfield `k`.
    pub fn base_field(&self) -> Self {
        self.prefix(self.inner.base_marker)
    }

    /// If `self` is a prefix of `other` (ignoring base markers), its length.
    pub fn prefix_len_in(&self, other: &FieldTower) -> Option<usize> {
        let n = self.num_levels();
        (n <= other.num_levels() && self.inner.levels[..] == other.inner.levels[..n]).then_some(n)
    }

    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.prefix_len_in(other).is_some()
    }

    /// The generator adjoined at `level`.
    pub fn generator(&self, level: usize) -> FieldElement {
        let mut e = vec![0u32; self.num_levels()];
        e[level] = 1;
        self.monomial(&e)
    }

    pub fn generator_by_name(&self, symbol: &str) -> Result<FieldElement> {
        let level = self
            .symbols()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(self.generator(level))
    }

    /// `prod ai^ei`, reduced.
    pub fn monomial(&self, exps: &[u32]) -> FieldElement {
        assert_eq!(exps.len(), self.num_levels());
        let mut sparse = BTreeMap::new();
        sparse.insert(exps.to_vec(), BigRational::one());
        self.element(self.inner.reduce(sparse))
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        self.element(coeffs)
    }

    pub fn int(&self, v: i64) -> FieldElement {
        self.rational(BigRational::from_integer(v.into()))
    }

    /// Wraps a dense coefficient vector.
    ///
    /// # Panics
    ///
    /// Panics if the length differs from the tower degree.
    pub fn element(&self, coeffs: Vec<BigRational>) -> FieldElement {
        assert_eq!(coeffs.len(), self.degree(), "coefficient vector has wrong length");
        FieldElement { tower: self.clone(), coeffs }
    }

    /// Parses an element literal such as `1/2*r^2 - z + 3`.
    pub fn parse(&self, src: &str) -> Result<FieldElement> {
        let vars: Vec<&str> = self.symbols().collect();
        let sparse = parse_poly(src, &vars)?;
        Ok(self.element(self.inner.reduce(sparse.terms)))
    }

    /// Parses a polynomial in `var` whose coefficients are literals in this
    /// tower, e.g. `x^2 + r*x + r^2`.
    pub fn parse_polynomial(&self, src: &str, var: &str) -> Result<Polynomial<FieldTower>> {
        if self.symbols().any(|s| s == var) {
            return Err(Error::DuplicateSymbol(var.to_string()));
        }
        let mut vars: Vec<&str> = self.symbols().collect();
        vars.push(var);
        let sparse = parse_poly(src, &vars)?;
        Ok(Polynomial::new(self.clone(), self.split_by_last_variable(&sparse)?))
    }

    fn split_by_last_variable(&self, sparse: &SparsePoly) -> Result<Vec<FieldElement>> {
        let k = self.num_levels();
        let mut groups: BTreeMap<u32, BTreeMap<Vec<u32>, BigRational>> = BTreeMap::new();
        for (e, c) in sparse.terms() {
            groups.entry(e[k]).or_default().insert(e[..k].to_vec(), c.clone());
        }
        let top = groups.keys().next_back().copied().unwrap_or(0) as usize;
        let mut coeffs = vec![self.zero(); top + 1];
        for (deg, terms) in groups {
            coeffs[deg as usize] = self.element(self.inner.reduce(terms));
        }
        Ok(coeffs)
    }

    /// The minimal polynomial of level `j`, with coefficients lifted into
    /// this tower.
    pub fn level_minpoly(&self, level: usize) -> Polynomial<FieldTower> {
        let coeffs = self.inner.levels[level]
            .minpoly
            .iter()
            .map(|c| self.pad(c))
            .collect();
        Polynomial::new(self.clone(), coeffs)
    }

    fn level_minpoly_string(&self, level: usize) -> String {
        self.level_minpoly_below(level).format(&self.inner.levels[level].symbol)
    }

    fn pad(&self, c: &[BigRational]) -> FieldElement {
        let mut coeffs = c.to_vec();
        coeffs.resize(self.degree(), BigRational::zero());
        self.element(coeffs)
    }

    /// Embeds an element of a prefix tower into this tower.
    pub fn include(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.tower == *self {
            return Ok(x.clone());
        }
        if !x.tower.is_prefix_of(self) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.pad(&x.coeffs))
    }

    /// Splits `x` into its coordinates over the prefix tower `sub`: the
    /// coefficients of the monomials in the generators above `sub`.
    pub fn coordinates_over(&self, x: &FieldElement, sub: &FieldTower) -> Result<Vec<FieldElement>> {
        if !sub.is_prefix_of(self) || x.tower != *self {
            return Err(Error::FieldMismatch);
        }
        let d = sub.degree();
        Ok(x.coeffs.chunks(d).map(|c| sub.element(c.to_vec())).collect())
    }

    /// Inverse of [`FieldTower::coordinates_over`].
    pub fn from_coordinates_over(&self, coords: &[FieldElement], sub: &FieldTower) -> Result<FieldElement> {
        if !sub.is_prefix_of(self) || coords.len() * sub.degree() != self.degree() {
            return Err(Error::FieldMismatch);
        }
        let mut coeffs = Vec::with_capacity(self.degree());
        for c in coords {
            if c.tower != *sub {
                return Err(Error::FieldMismatch);
            }
            coeffs.extend(c.coeffs.iter().cloned());
        }
        Ok(self.element(coeffs))
    }

    /// Monic minimal polynomial of `x` over the prefix tower `sub`, found as
    /// the first linear dependency among `1, x, x^2, ...`.
    pub fn minpoly_over(&self, x: &FieldElement, sub: &FieldTower) -> Result<Polynomial<FieldTower>> {
        let mut powers: Vec<Vec<FieldElement>> = Vec::new();
        let mut p = self.one();
        loop {
            let coords = self.coordinates_over(&p, sub)?;
            if let Some(dep) = crate::exactla::express_in_span(sub, &powers, &coords) {
                // p = sum dep[i] x^i  =>  x^t - sum dep[i] x^i = 0
                let mut coeffs: Vec<FieldElement> = dep.iter().map(|c| -c).collect();
                coeffs.push(sub.one());
                return Ok(Polynomial::new(sub.clone(), coeffs));
            }
            powers.push(coords);
            p = &p * x;
        }
    }

    /// Rendering of the basis monomial at `index`, `None` for 1.
    fn monomial_string(&self, index: usize) -> Option<String> {
        let e = self.inner.exponents(index);
        let parts: Vec<String> = e
            .iter()
            .zip(self.symbols())
            .filter(|(&x, _)| x > 0)
            .map(|(&x, s)| if x == 1 { s.to_string() } else { format!("{s}^{x}") })
            .collect();
        (!parts.is_empty()).then(|| parts.join("*"))
    }
}

impl TowerInner {
    fn exponents(&self, mut index: usize) -> Vec<u32> {
        self.levels
            .iter()
            .map(|l| {
                let e = index % l.degree;
                index /= l.degree;
                e as u32
            })
            .collect()
    }

    fn index(&self, exps: &[u32]) -> usize {
        let mut idx = 0;
        for (l, &e) in self.levels.iter().zip(exps).rev() {
            idx = idx * l.degree + e as usize;
        }
        idx
    }

    /// Reduces a sparse polynomial in the generators to canonical dense form.
    /// Levels are cleared from the top down; rewriting `aj^dj` only touches
    /// exponents at levels `<= j`.
    fn reduce(&self, mut terms: BTreeMap<Vec<u32>, BigRational>) -> Vec<BigRational> {
        for j in (0..self.levels.len()).rev() {
            let lvl = &self.levels[j];
            let d = lvl.degree as u32;
            loop {
                let Some(key) = terms.keys().find(|e| e[j] >= d).cloned() else {
                    break;
                };
                let c = terms.remove(&key).unwrap();
                for (t, coeff) in lvl.minpoly[..lvl.degree].iter().enumerate() {
                    for (idx, m) in coeff.iter().enumerate() {
                        if m.is_zero() {
                            continue;
                        }
                        let lower = self.exponents(idx);
                        let mut e = key.clone();
                        e[j] = key[j] - d + t as u32;
                        for (slot, le) in e.iter_mut().zip(&lower).take(j) {
                            *slot += le;
                        }
                        let v = terms.entry(e).or_insert_with(BigRational::zero);
                        *v -= &c * m;
                    }
                }
                terms.retain(|_, v| !v.is_zero());
            }
        }
        let mut dense = vec![BigRational::zero(); *self.prefix_degrees.last().unwrap()];
        for (e, c) in terms {
            dense[self.index(&e)] += c;
        }
        dense
    }
}

/// An element of a [`FieldTower`], canonically reduced.
#[derive(Clone, PartialEq)]
pub struct FieldElement {
    tower: FieldTower,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { tower: self.tower.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { tower: self.tower.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut out = vec![BigRational::zero(); d];
        let table = &self.tower.inner.table;
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, t) in &table[i][j] {
                    out[*k] += &ab * t;
                }
            }
        }
        Ok(Self { tower: self.tower.clone(), coeffs: out })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Inverse by solving `self * y = 1` on the multiplication matrix.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.tower.rational(q.recip()));
        }
        let d = self.coeffs.len();
        // column j = self * e_j
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            let mut e = vec![BigRational::zero(); d];
            e[j] = BigRational::one();
            let col = self.checked_mul(&self.tower.element(e))?;
            for (i, c) in col.coeffs.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let y = solve_rational(m, rhs).ok_or(Error::NonInvertible)?;
        Ok(self.tower.element(y))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.tower.pow(self, e)
    }
}

/// Gaussian elimination for a square rational system; `None` if singular.
fn solve_rational(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
                let delta = &f * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some(rhs)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = self.tower.monomial_string(idx);
            let neg = c.is_negative();
            let a = c.abs();
            let body = match mono {
                None => a.to_string(),
                Some(m) if a.is_one() => m,
                Some(m) => format!("{a}*{m}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// # Panics
            ///
            /// Panics if the operands belong to different towers.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands belong to different towers")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Field for FieldTower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.element(vec![BigRational::zero(); self.degree()])
    }
    fn one(&self) -> FieldElement {
        self.int(1)
    }
    fn from_i64(&self, v: i64) -> FieldElement {
        self.int(v)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a - b
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }
    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        a.inv()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &FieldElement) -> bool {
        a.is_one()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<FieldElement>> {
        None
    }
    fn format(&self, a: &FieldElement) -> String {
        a.to_string()
    }
}

impl Matrix<FieldTower> {
    /// Entrywise inclusion into a tower that has this matrix's tower as a
    /// prefix.
    pub fn lift_to(&self, target: &FieldTower) -> Result<Matrix<FieldTower>> {
        let data = self.entries().iter().map(|x| target.include(x)).collect::<Result<Vec<_>>>()?;
        Matrix::new(target.clone(), self.rows(), self.cols(), data)
    }
}

impl FieldTower {
    pub fn parse_vector(&self, entries: &[&str]) -> Result<Vec<FieldElement>> {
        entries.iter().map(|s| self.parse(s)).collect()
    }

    /// Parses a matrix given as rows of element literals.
    pub fn parse_matrix(&self, rows: &[&[&str]]) -> Result<Matrix<FieldTower>> {
        let rows = rows.iter().map(|r| self.parse_vector(r)).collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.clone(), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho() -> FieldTower {
        FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap()
    }

    fn rho_zeta() -> FieldTower {
        FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap()
    }

    #[test]
    fn tower_degrees() {
        assert_eq!(FieldTower::rationals().degree(), 1);
        assert_eq!(rho().degree(), 3);
        assert_eq!(rho_zeta().degree(), 6);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FieldTower::new(&[("r", "2*r^3 - 2")], 0).unwrap_err(),
            Error::NonMonic { symbol: "r".into() }
        );
        assert_eq!(
            FieldTower::new(&[("r", "r - 2")], 0).unwrap_err(),
            Error::DegreeTooSmall { symbol: "r".into(), degree: 1 }
        );
        assert_eq!(
            FieldTower::new(&[("z", "z^2 + w")], 0).unwrap_err(),
            Error::UnknownSymbol("w".into())
        );
        assert_eq!(
            FieldTower::new(&[("r", "r^3 - 2")], 2).unwrap_err(),
            Error::BaseMarkerOutOfRange { marker: 2, levels: 1 }
        );
        assert_eq!(
            FieldTower::new(&[("r", "r^3 - 2"), ("r", "r^2 + 1")], 0).unwrap_err(),
            Error::DuplicateSymbol("r".into())
        );
    }

    #[test]
    fn coefficients_may_use_lower_generators() {
        // sqrt(1 + sqrt 2)
        let k = FieldTower::new(&[("s", "s^2 - 2"), ("t", "t^2 - s - 1")], 0).unwrap();
        let t = k.generator(1);
        assert_eq!(&t * &t, k.parse("1 + s").unwrap());
    }

    #[test]
    fn reduction_by_minpoly() {
        let k = rho();
        let r = k.generator(0);
        assert_eq!(&r * &(&r * &r), k.int(2));
        assert_eq!(k.parse("r^5").unwrap(), k.parse("2*r^2").unwrap());
    }

    #[test]
    fn identity_multiplication() {
        let k = rho_zeta();
        let x = k.parse("1 + z").unwrap();
        assert_eq!(&x * &k.one(), x);
    }

    #[test]
    fn inverse_of_cube_root() {
        let k = rho();
        let r = k.generator(0);
        let inv = r.inv().unwrap();
        assert_eq!(inv, k.parse("r^2/2").unwrap());
        assert!((&r * &inv).is_one());
    }

    #[test]
    fn division_errors() {
        let k = rho();
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(k.one().checked_div(&k.zero()), Err(Error::DivisionByZero));
        let other = rho_zeta();
        assert_eq!(k.one().checked_add(&other.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_minpoly_reports_non_invertible() {
        // x^2 - 1 = (x - 1)(x + 1): the ring has zero divisors
        let k = FieldTower::new(&[("u", "u^2 - 1")], 0).unwrap();
        let zd = k.parse("u - 1").unwrap();
        assert_eq!(zd.inv(), Err(Error::NonInvertible));
        assert!((&zd * &k.parse("u + 1").unwrap()).is_zero());
    }

    #[test]
    fn zeta_relations() {
        let k = rho_zeta();
        let z = k.generator(1);
        assert!((&z * &(&z * &z)).is_one());
        assert_eq!(&z * &z, k.parse("-1 - z").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let k = rho_zeta();
        for s in ["1/2*r^2 - z + 3", "0", "-r*z", "r^2*z - 7/3", "-1"] {
            let x = k.parse(s).unwrap();
            assert_eq!(k.parse(&x.to_string()).unwrap(), x, "{s} -> {x}");
        }
        assert_eq!(k.parse("3 - z + r^2/2").unwrap().to_string(), "3 + 1/2*r^2 - z");
    }

    #[test]
    fn prefix_inclusion_pads() {
        let big = rho_zeta();
        let small = rho();
        assert!(small.is_prefix_of(&big));
        let r = small.generator(0);
        let lifted = big.include(&r).unwrap();
        assert_eq!(lifted, big.generator(0));
        assert_eq!(small.include(&big.generator(1)), Err(Error::FieldMismatch));
    }

    #[test]
    fn minpoly_examples() {
        let big = rho_zeta();
        let small = rho();
        let x = big.parse("r*z").unwrap();
        let p = big.minpoly_over(&x, &small).unwrap();
        assert_eq!(p, small.parse_polynomial("x^2 + r*x + r^2", "x").unwrap());

        let p = small.minpoly_over(&small.generator(0), &small).unwrap();
        assert_eq!(p, small.parse_polynomial("x - r", "x").unwrap());

        let q = FieldTower::rationals();
        let p = big.minpoly_over(&big.generator(1), &q).unwrap();
        assert_eq!(p, q.parse_polynomial("x^2 + x + 1", "x").unwrap());
    }

    #[test]
    fn coordinates_over_round_trip() {
        let big = rho_zeta();
        let small = rho();
        let x = big.parse("1 + r*z - r^2").unwrap();
        let c = big.coordinates_over(&x, &small).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], small.parse("r").unwrap());
        assert_eq!(big.from_coordinates_over(&c, &small).unwrap(), x);
    }
}

//! Top-degree wedges in `∧^m F^n`.
//!
//! The basis of `∧^m F^n` is indexed by strictly increasing `m`-subsets of
//! `{0..n}` in lexicographic order; this order is also the wire order of
//! serialized wedge vectors. Subsets print 1-based (`e1∧e3`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{vector, Matrix};
use crate::field::Field;

/// Lexicographically ordered `m`-subsets of `{0..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeIndex {
    n: usize,
    m: usize,
    subsets: Vec<Vec<usize>>,
}

impl WedgeIndex {
    pub fn new(n: usize, m: usize) -> Self {
        let mut subsets = Vec::new();
        if m <= n {
            let mut cur: Vec<usize> = (0..m).collect();
            loop {
                subsets.push(cur.clone());
                // rightmost position that can still advance
                let Some(i) = (0..m).rev().find(|&i| cur[i] < n - m + i) else { break };
                cur[i] += 1;
                for j in i + 1..m {
                    cur[j] = cur[j - 1] + 1;
                }
            }
        }
        Self { n, m, subsets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `C(n, m)`
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    /// Position of a strictly increasing 0-based subset.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|s| s.as_slice().cmp(subset)).ok()
    }

    /// `e{i}∧e{j}∧...`, 1-based.
    pub fn label(&self, i: usize) -> String {
        if self.m == 0 {
            return "1".into();
        }
        let parts: Vec<String> = self.subsets[i].iter().map(|k| format!("e{}", k + 1)).collect();
        parts.join("∧")
    }
}

/// An element of `∧^m F^n` in the lexicographic subset basis.
#[derive(Clone, PartialEq)]
pub struct WedgeVector<F: Field> {
    field: F,
    index: Arc<WedgeIndex>,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> WedgeVector<F> {
    pub fn zero(field: F, index: Arc<WedgeIndex>) -> Self {
        let coeffs = vector::zero(&field, index.len());
        Self { field, index, coeffs }
    }

    pub fn new(field: F, index: Arc<WedgeIndex>, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != index.len() {
            return Err(Error::DimensionMismatch { expected: index.len(), found: coeffs.len() });
        }
        Ok(Self { field, index, coeffs })
    }

    /// Sum of `c * e_{i1}∧...∧e_{im}` over 1-based index lists, which must be
    /// strictly increasing.
    pub fn from_terms(field: F, index: Arc<WedgeIndex>, terms: &[(&[usize], F::Elem)]) -> Result<Self> {
        let mut w = Self::zero(field, index);
        for (subset, c) in terms {
            let zero_based: Vec<usize> = subset.iter().map(|&k| k.wrapping_sub(1)).collect();
            let pos = w
                .index
                .position(&zero_based)
                .ok_or_else(|| Error::Unsupported(format!("{subset:?} is not an increasing {}-subset", w.index.m)))?;
            w.coeffs[pos] = w.field.add(&w.coeffs[pos], c);
        }
        Ok(w)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn index(&self) -> &Arc<WedgeIndex> {
        &self.index
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient at a 1-based increasing subset.
    pub fn get(&self, subset: &[usize]) -> Option<&F::Elem> {
        let zero_based: Vec<usize> = subset.iter().map(|&k| k.wrapping_sub(1)).collect();
        self.index.position(&zero_based).map(|p| &self.coeffs[p])
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.field, &self.coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = vector::add(&self.field, &self.coeffs, &other.coeffs);
        Ok(Self { field: self.field.clone(), index: self.index.clone(), coeffs })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = vector::scale(&self.field, c, &self.coeffs);
        Self { field: self.field.clone(), index: self.index.clone(), coeffs }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.index != other.index {
            return Err(Error::DimensionMismatch { expected: self.index.len(), found: other.index.len() });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Coefficients rendered with the field's element syntax.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.field.format(c)).collect()
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<WedgeVector<G>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(WedgeVector { field: target, index: self.index.clone(), coeffs })
    }
}

impl<F: Field> fmt::Debug for WedgeVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("({})*{}", self.field.format(c), self.index.label(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `v1∧...∧vm` for arbitrary (possibly dependent) vectors of length `n`.
pub fn wedge<F: Field>(field: &F, n: usize, vectors: &[Vec<F::Elem>]) -> Result<WedgeVector<F>> {
    let index = Arc::new(WedgeIndex::new(n, vectors.len()));
    wedge_in(field, &index, vectors)
}

/// As [`wedge`], reusing an existing index.
pub fn wedge_in<F: Field>(field: &F, index: &Arc<WedgeIndex>, vectors: &[Vec<F::Elem>]) -> Result<WedgeVector<F>> {
    if vectors.len() != index.m() {
        return Err(Error::DimensionMismatch { expected: index.m(), found: vectors.len() });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != index.n()) {
        return Err(Error::DimensionMismatch { expected: index.n(), found: v.len() });
    }
    let mut out = WedgeVector::zero(field.clone(), index.clone());
    if index.is_empty() {
        return Ok(out);
    }
    let m = Matrix::from_rows_with_cols(field.clone(), vectors.to_vec(), index.n())?;
    for (i, subset) in index.subsets().iter().enumerate() {
        out.coeffs[i] = m.select_columns(subset).determinant()?;
    }
    Ok(out)
}

/// Plücker coordinates of the row space of `basis`: the maximal minors in
/// lexicographic column-subset order, with rows taken in the given order.
///
/// An empty basis gives `(1)` in `∧^0`; more rows than columns give the
/// empty vector of `∧^m` with `m > n`.
pub fn plucker<F: Field>(basis: &Matrix<F>) -> Result<WedgeVector<F>> {
    let (m, n) = (basis.rows(), basis.cols());
    if m <= n {
        let rank = basis.rank();
        if rank < m {
            return Err(Error::RankDeficient { rank, expected: m });
        }
    }
    wedge(basis.field(), n, &basis.row_vecs())
}

/// `d(ψ)(e1∧...∧em) = Σ_i e1∧...∧ψ(ei)∧...∧em`.
pub fn wedge_derivation<F: Field>(field: &F, e: &[Vec<F::Elem>], psi: &[Vec<F::Elem>]) -> Result<WedgeVector<F>> {
    if e.len() != psi.len() {
        return Err(Error::DimensionMismatch { expected: e.len(), found: psi.len() });
    }
    let n = e.first().map_or(0, Vec::len);
    let index = Arc::new(WedgeIndex::new(n, e.len()));
    let mut acc = WedgeVector::zero(field.clone(), index.clone());
    for (i, image) in psi.iter().enumerate() {
        if vector::is_zero(field, image) {
            continue;
        }
        let mut rows = e.to_vec();
        rows[i] = image.clone();
        acc = acc.add(&wedge_in(field, &index, &rows)?)?;
    }
    Ok(acc)
}

/// `p12·p34 − p13·p24 + p14·p23`, which vanishes exactly on decomposable
/// vectors of `∧^2 F^4`.
pub fn plucker_relation_check<F: Field>(w: &WedgeVector<F>) -> Result<F::Elem> {
    let idx = w.index();
    if (idx.n(), idx.m()) != (4, 2) {
        return Err(Error::Unsupported(format!("Plücker relation for (m, n) = ({}, {})", idx.m(), idx.n())));
    }
    let f = w.field();
    let p = w.coeffs();
    // lex order: 12 13 14 23 24 34
    let a = f.mul(&p[0], &p[5]);
    let b = f.mul(&p[1], &p[4]);
    let c = f.mul(&p[2], &p[3]);
    Ok(f.add(&f.sub(&a, &b), &c))
}

//! Dense exact linear algebra over any [`Field`].
//!
//! Vectors are rows: a subspace is the row space of its basis, and matrices
//! act on the right (`v * M`). Elimination is plain Gauss-Jordan with the
//! leftmost available pivot taken from the first nonzero row at or below the
//! current position, so results are deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    /// Reduced row-echelon form with zero rows removed.
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn scalar(field: F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds a matrix from rows; an empty row list gives a `0 x 0` matrix.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, cols)
    }

    pub fn from_rows_with_cols(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { field, rows: nrows, cols, data })
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diagonal(field: F, blocks: &[Matrix<F>]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            if b.rows != b.cols {
                return Err(Error::DimensionMismatch { expected: b.rows, found: b.cols });
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Columns `cols` of every row, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let data = (0..self.rows)
            .flat_map(|i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.add(slot, &f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.pivot_inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Right nullspace `{x : M x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix.get(row, fc));
                }
                v
            })
            .collect();
        Subspace::from_vectors(f.clone(), self.cols, vectors).expect("kernel vectors have matching length")
    }

    /// Left nullspace `{y : y M = 0}` as a subspace of `F^rows`.
    pub fn left_kernel(&self) -> Subspace<F> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.pivot_inv(&piv);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::NonInvertible);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.matrix.select_columns(&cols))
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.transpose().solve(b)
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        if b.len() != self.rows {
            return None;
        }
        let mut aug = Self::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Maps entries into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Matrix<G>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Matrix::new(target, self.rows, self.cols, data)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Coefficients expressing `target` in the span of `vectors`, if it lies there.
pub fn express_in_span<F: Field>(field: &F, vectors: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if vectors.is_empty() {
        return target.iter().all(|x| field.is_zero(x)).then(Vec::new);
    }
    let m = Matrix::from_rows_with_cols(field.clone(), vectors.to_vec(), target.len()).ok()?;
    m.solve_left(target)
}

pub mod vector {
    //! Helpers on plain row vectors.
    use crate::field::Field;

    pub fn zero<F: Field>(field: &F, n: usize) -> Vec<F::Elem> {
        vec![field.zero(); n]
    }

    pub fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
        let mut v = zero(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero<F: Field>(field: &F, v: &[F::Elem]) -> bool {
        v.iter().all(|x| field.is_zero(x))
    }

    pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
    }

    pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
    }

    pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[F::Elem]) -> Vec<F::Elem> {
        v.iter().map(|x| field.mul(c, x)).collect()
    }

    /// `acc += c * v`
    pub fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
        if field.is_zero(c) {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            *a = field.add(a, &field.mul(c, x));
        }
    }

    pub fn format<F: Field>(field: &F, v: &[F::Elem]) -> String {
        let cells: Vec<String> = v.iter().map(|x| field.format(x)).collect();
        format!("({})", cells.join(", "))
    }
}

/// A subspace of `F^n`, stored by its canonical reduced row-echelon basis.
///
/// Two subspaces are equal iff their canonical bases are equal entrywise.
#[derive(Clone, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// The span of `vectors` (zero vectors and dependencies allowed).
    pub fn from_vectors(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        let m = Matrix::from_rows_with_cols(field, vectors, ambient)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        let Rref { matrix, pivots, .. } = m.rref();
        Self { ambient: m.cols(), basis: matrix, pivots }
    }

    /// The span of a list of vectors given as a basis that must be independent.
    pub fn from_basis(field: F, ambient: usize, basis: Vec<Vec<F::Elem>>) -> Result<Self> {
        let expected = basis.len();
        let s = Self::from_vectors(field, ambient, basis)?;
        if s.dim() != expected {
            return Err(Error::RankDeficient { rank: s.dim(), expected });
        }
        Ok(s)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: n });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    ///
    /// With an RREF basis the only candidate is `v` read off at the pivots.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        self.check_len(v.len())?;
        let f = self.field();
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            vector::axpy(f, &mut r, &f.neg(c), self.basis.row(i));
        }
        Ok(vector::is_zero(f, &r).then_some(coords))
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_len(other.ambient)?;
        for i in 0..other.dim() {
            if !self.contains(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_len(other.ambient)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::from_vectors(self.field().clone(), self.ambient, rows)
    }

    /// `U ∩ W` from the left kernel of the stacked bases: `x U = y W`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_len(other.ambient)?;
        let f = self.field().clone();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(f, self.ambient));
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        let stacked = Matrix::from_rows_with_cols(f.clone(), rows, self.ambient)?;
        let ker = stacked.left_kernel();
        let vectors = ker
            .basis_vectors()
            .into_iter()
            .map(|coeffs| self.basis.left_apply(&coeffs[..self.dim()]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(f, self.ambient, vectors)
    }

    /// Canonical complement: unit vectors at the non-pivot columns.
    pub fn complement(&self) -> Self {
        let f = self.field().clone();
        let vectors = self.complement_columns().into_iter().map(|c| vector::unit(&f, self.ambient, c)).collect();
        Self::from_vectors(f, self.ambient, vectors).expect("unit vectors have the ambient length")
    }

    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Component of `v` along the canonical complement, read at the
    /// non-pivot columns (`v = e + l`, `e` in the subspace).
    pub fn complement_coordinates(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_len(v.len())?;
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = f.neg(&v[p]);
            vector::axpy(f, &mut r, &c, self.basis.row(i));
        }
        Ok(self.complement_columns().into_iter().map(|c| r[c].clone()).collect())
    }

    /// Image of every basis vector under `f`, as a new subspace.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Subspace<G>> {
        let m = self.basis.map(target, f)?;
        Ok(Subspace::row_space(&m))
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fieldtower::FieldTower;

    fn kz() -> FieldTower {
        FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap()
    }

    fn mat(k: &FieldTower, rows: &[&[&str]]) -> Matrix<FieldTower> {
        let rows = rows.iter().map(|r| r.iter().map(|s| k.parse(s).unwrap()).collect()).collect();
        Matrix::from_rows(k.clone(), rows).unwrap()
    }

    #[test]
    fn rref_drops_zero_rows() {
        let k = kz();
        let r = mat(&k, &[&["0", "0"], &["1", "z"]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, mat(&k, &[&["1", "z"]]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let q = FieldTower::rationals();
        let id = Matrix::identity(q, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_with_root_of_unity_dependency() {
        let k = kz();
        let r = mat(&k, &[&["1", "z", "0", "0"], &["z^2", "z^3", "0", "0"]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, mat(&k, &[&["1", "z", "0", "0"]]));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let q = FieldTower::rationals();
        let e = |i| vector::unit(&q, 4, i);
        let u = Subspace::from_vectors(q.clone(), 4, vec![e(0), e(1)]).unwrap();
        let w = Subspace::from_vectors(q.clone(), 4, vec![e(1), e(2)]).unwrap();
        let i = u.intersect(&w).unwrap();
        assert_eq!(i, Subspace::from_vectors(q.clone(), 4, vec![e(1)]).unwrap());
        assert_eq!(u.sum(&w).unwrap().dim(), 3);
    }

    #[test]
    fn membership() {
        let k = kz();
        let s = Subspace::row_space(&mat(&k, &[&["1", "z", "0", "0"], &["0", "0", "1", "z^2"]]));
        let v: Vec<_> = ["1", "z", "0", "0"].iter().map(|x| k.parse(x).unwrap()).collect();
        assert!(s.contains(&v).unwrap());
        let w: Vec<_> = ["1", "z^2", "0", "0"].iter().map(|x| k.parse(x).unwrap()).collect();
        assert!(!s.contains(&w).unwrap());
        assert!(matches!(s.contains(&w[..3]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let q = FieldTower::rationals();
        let m = Matrix::from_rows(q.clone(), vec![vec![q.int(1), q.int(1), q.int(1)]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.dim(), 2);
        for v in ker.basis_vectors() {
            assert!(vector::is_zero(&q, &m.apply(&v).unwrap()));
        }
    }

    #[test]
    fn determinant_and_inverse_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(f, vec![vec![1, 2], vec![1, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 2); // 1 - 2 = -1
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 2));
        let sing = Matrix::from_rows(f, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(sing.determinant().unwrap(), 0);
        assert_eq!(sing.inverse(), Err(Error::NonInvertible));
    }

    #[test]
    fn solve_and_complement() {
        let k = kz();
        let s = Subspace::row_space(&mat(&k, &[&["1", "z", "0", "0"], &["0", "0", "1", "z^2"]]));
        assert_eq!(s.complement_columns(), vec![1, 3]);
        let v: Vec<_> = ["2", "3", "z", "1"].iter().map(|x| k.parse(x).unwrap()).collect();
        let l = s.complement_coordinates(&v).unwrap();
        // v - 2*(1,z,0,0) - z*(0,0,1,z^2) = (0, 3 - 2z, 0, 1 - z^3) = (0, 3-2z, 0, 0)
        assert_eq!(l, vec![k.parse("3 - 2*z").unwrap(), k.zero()]);
    }
}

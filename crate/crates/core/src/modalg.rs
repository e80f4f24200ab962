//! Matrix algebras acting on row vectors from the right.
//!
//! A [`MatrixAlgebra`] is presented by generators; every notion here
//! (closure, invariance) only needs the generators, since a subspace closed
//! under each generator is closed under the algebra they generate.

use crate::error::{Error, Result};
use crate::exactla::{express_in_span, vector, Matrix, Subspace};
use crate::field::Field;
use crate::fieldtower::FieldTower;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebra<F: Field> {
    field: F,
    n: usize,
    generators: Vec<Matrix<F>>,
}

impl<F: Field> MatrixAlgebra<F> {
    pub fn new(field: F, generators: Vec<Matrix<F>>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Invalid("an algebra needs at least one generator".into()))?;
        let n = first.rows();
        for g in &generators {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: if g.rows() != n { g.rows() } else { g.cols() } });
            }
            if *g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self { field, n, generators })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.generators
    }

    /// Maps every generator entrywise into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<MatrixAlgebra<G>> {
        let gens = self.generators.iter().map(|g| g.map(target.clone(), &f)).collect::<Result<Vec<_>>>()?;
        MatrixAlgebra::new(target, gens)
    }
}

impl MatrixAlgebra<FieldTower> {
    /// The same generators viewed over a tower that has `K` as a prefix.
    pub fn lift_to(&self, target: &FieldTower) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.lift_to(target)).collect::<Result<Vec<_>>>()?;
        Self::new(target.clone(), gens)
    }
}

/// The smallest `A`-invariant subspace containing `vs`.
///
/// Breadth-first: each newly added vector is multiplied by every generator
/// in order, and images outside the current span join the frontier.
pub fn generate_submodule<F: Field>(vs: &[Vec<F::Elem>], alg: &MatrixAlgebra<F>) -> Result<Subspace<F>> {
    let f = alg.field();
    let mut span = Subspace::zero(f.clone(), alg.n());
    let mut frontier = Vec::new();
    for v in vs {
        if !span.contains(v)? {
            span = span.sum(&Subspace::from_vectors(f.clone(), alg.n(), vec![v.clone()])?)?;
            frontier.push(v.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        for g in alg.generators() {
            let w = g.left_apply(&v)?;
            if !span.contains(&w)? {
                span = span.sum(&Subspace::from_vectors(f.clone(), alg.n(), vec![w.clone()])?)?;
                frontier.push(w);
            }
        }
        if span.dim() == alg.n() {
            break;
        }
    }
    Ok(span)
}

pub fn is_invariant<F: Field>(m: &Subspace<F>, alg: &MatrixAlgebra<F>) -> Result<bool> {
    Ok(invariance_witness(m, alg)?.is_none())
}

/// First `(basis row, generator)` pair with `row * generator ∉ M`.
pub fn invariance_witness<F: Field>(m: &Subspace<F>, alg: &MatrixAlgebra<F>) -> Result<Option<(usize, usize)>> {
    for i in 0..m.dim() {
        for (j, g) in alg.generators().iter().enumerate() {
            if !m.contains(&g.left_apply(m.basis().row(i))?)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Monic minimal polynomial of a square matrix over its own field.
pub fn matrix_minpoly<F: Field>(a: &Matrix<F>) -> Result<Polynomial<F>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let f = a.field();
    first_dependency(f, a, |m| Ok(m.entries().to_vec()))
}

/// Monic minimal polynomial of `a` over the prefix tower `sub`.
pub fn matrix_minpoly_over(a: &Matrix<FieldTower>, sub: &FieldTower) -> Result<Polynomial<FieldTower>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let k = a.field().clone();
    first_dependency(sub, a, |m| {
        let mut out = Vec::new();
        for x in m.entries() {
            out.extend(k.coordinates_over(x, sub)?);
        }
        Ok(out)
    })
}

fn first_dependency<F: Field, G: Field>(
    sub: &G,
    a: &Matrix<F>,
    flatten: impl Fn(&Matrix<F>) -> Result<Vec<G::Elem>>,
) -> Result<Polynomial<G>> {
    let mut powers: Vec<Vec<G::Elem>> = Vec::new();
    let mut p = Matrix::identity(a.field().clone(), a.rows());
    loop {
        let flat = flatten(&p)?;
        if let Some(dep) = express_in_span(sub, &powers, &flat) {
            let mut coeffs: Vec<G::Elem> = dep.iter().map(|c| sub.neg(c)).collect();
            coeffs.push(sub.one());
            return Ok(Polynomial::new(sub.clone(), coeffs));
        }
        powers.push(flat);
        p = p.mul(a)?;
    }
}

/// `real + ε·eps` in `(K[ε]/(ε²))^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector<F: Field> {
    pub real: Vec<F::Elem>,
    pub eps: Vec<F::Elem>,
}

impl<F: Field> DualVector<F> {
    pub fn new(real: Vec<F::Elem>, eps: Vec<F::Elem>) -> Result<Self> {
        if real.len() != eps.len() {
            return Err(Error::DimensionMismatch { expected: real.len(), found: eps.len() });
        }
        Ok(Self { real, eps })
    }

    /// Right multiplication by a matrix over `K`.
    pub fn apply(&self, a: &Matrix<F>) -> Result<Self> {
        Ok(Self { real: a.left_apply(&self.real)?, eps: a.left_apply(&self.eps)? })
    }
}

/// Whether the `K[ε]/(ε²)`-span of `{e_i + ε·ψ(e_i)}` is `A`-invariant,
/// where `e_i` is the canonical basis of `E` and `psi[i] = ψ(e_i)`.
///
/// Writing `e_i·a = Σ c_j e_j` (which must hold for the real parts), the
/// dual vector `(e_i + εψ_i)·a` equals `Σ (c_j + ε d_j)(e_j + εψ_j)` for some
/// `d` iff `ψ_i·a − Σ c_j ψ_j` lies in `E`.
pub fn invariant_dual_check<F: Field>(e: &Subspace<F>, psi: &[Vec<F::Elem>], alg: &MatrixAlgebra<F>) -> Result<bool> {
    if psi.len() != e.dim() {
        return Err(Error::DimensionMismatch { expected: e.dim(), found: psi.len() });
    }
    let f = alg.field();
    let basis = e.basis_vectors();
    for (ei, psi_i) in basis.iter().zip(psi) {
        let v = DualVector::<F>::new(ei.clone(), psi_i.clone())?;
        for g in alg.generators() {
            let w = v.apply(g)?;
            let Some(c) = e.coordinates(&w.real)? else {
                return Ok(false);
            };
            let mut rest = w.eps.clone();
            for (cj, psi_j) in c.iter().zip(psi) {
                vector::axpy(f, &mut rest, &f.neg(cj), psi_j);
            }
            if !e.contains(&rest)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The dual-number tangent space at an invariant `E`, as the subspace of
/// `Hom(E, L)` (coordinates `x[i·dim L + t]` for `ψ(e_i) = Σ_t x l_t`, with
/// `l_t` the canonical complement basis) solving the linearized conditions of
/// [`invariant_dual_check`].
pub fn dual_tangent_space<F: Field>(e: &Subspace<F>, alg: &MatrixAlgebra<F>) -> Result<Subspace<F>> {
    let f = alg.field();
    let n = alg.n();
    let m = e.dim();
    let comp = e.complement_columns();
    let dl = comp.len();
    let basis = e.basis_vectors();
    // structure constants c[g][i][j]: e_i·a_g = Σ_j c e_j
    let mut consts = Vec::new();
    for g in alg.generators() {
        let mut rows = Vec::new();
        for ei in &basis {
            let c = e.coordinates(&g.left_apply(ei)?)?.ok_or(Error::NotInvariant)?;
            rows.push(c);
        }
        consts.push(rows);
    }
    // one column per unknown: the L-components of all constraints when that
    // unknown is 1 and the others 0
    let unknowns = m * dl;
    let mut columns = Vec::with_capacity(unknowns);
    for j in 0..m {
        for &lt in &comp {
            let unit = vector::unit(f, n, lt);
            let mut col = Vec::new();
            for (g, c) in alg.generators().iter().zip(&consts) {
                let image = g.left_apply(&unit)?;
                for i in 0..m {
                    // ψ_i·a − Σ_j c_ij ψ_j with ψ = unit at slot j
                    let mut r = if i == j { image.clone() } else { vector::zero(f, n) };
                    vector::axpy(f, &mut r, &f.neg(&c[i][j]), &unit);
                    col.extend(e.complement_coordinates(&r)?);
                }
            }
            columns.push(col);
        }
    }
    let rows = columns.first().map_or(0, Vec::len);
    let system = Matrix::from_rows_with_cols(f.clone(), columns, rows)?.transpose();
    Ok(system.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn k() -> FieldTower {
        FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap()
    }

    fn phi_rho(k: &FieldTower) -> Matrix<FieldTower> {
        k.parse_matrix(&[&["0", "-r", "0", "0"], &["r", "-r", "0", "0"], &["0", "0", "0", "-r"], &["0", "0", "r", "-r"]])
            .unwrap()
    }

    fn alg() -> MatrixAlgebra<FieldTower> {
        let k = k();
        MatrixAlgebra::new(k.clone(), vec![phi_rho(&k)]).unwrap()
    }

    #[test]
    fn submodule_examples() {
        let a = alg();
        let k = a.field().clone();
        let e = |i| vector::unit(&k, 4, i);
        let s = generate_submodule(&[e(0)], &a).unwrap();
        assert_eq!(s, Subspace::from_vectors(k.clone(), 4, vec![e(0), e(1)]).unwrap());
        let s = generate_submodule(&[e(2)], &a).unwrap();
        assert_eq!(s, Subspace::from_vectors(k.clone(), 4, vec![e(2), e(3)]).unwrap());
        let s = generate_submodule(&[vector::zero(&k, 4)], &a).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn invariance_over_extension() {
        let f = FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap();
        let a = alg().lift_to(&f).unwrap();
        let m = |rows: &[&[&str]]| Subspace::row_space(&f.parse_matrix(rows).unwrap());
        assert!(is_invariant(&m(&[&["1", "z", "0", "0"], &["0", "0", "1", "z^2"]]), &a).unwrap());
        assert!(is_invariant(&m(&[&["1", "z", "0", "0"], &["0", "0", "1", "z"]]), &a).unwrap());
        assert!(!is_invariant(&m(&[&["1", "0", "0", "0"], &["0", "0", "1", "z"]]), &a).unwrap());
    }

    #[test]
    fn minimal_polynomials() {
        let k = k();
        assert_eq!(matrix_minpoly(&phi_rho(&k)).unwrap(), k.parse_polynomial("x^2 + r*x + r^2", "x").unwrap());
        assert_eq!(matrix_minpoly(&Matrix::identity(k.clone(), 3)).unwrap(), k.parse_polynomial("x - 1", "x").unwrap());
        let gi = FieldTower::new(&[("i", "i^2 + 1")], 0).unwrap();
        let neg_i = Matrix::scalar(gi.clone(), 2, &gi.parse("-i").unwrap());
        assert_eq!(matrix_minpoly(&neg_i).unwrap(), gi.parse_polynomial("x + i", "x").unwrap());
        let q = FieldTower::rationals();
        assert_eq!(matrix_minpoly_over(&neg_i, &gi.prefix(0)).unwrap(), q.parse_polynomial("x^2 + 1", "x").unwrap());
        let over_q = matrix_minpoly_over(&phi_rho(&k), &q).unwrap();
        assert_eq!(over_q, q.parse_polynomial("x^3 - 2", "x").unwrap());
    }

    #[test]
    fn minpoly_over_prime_field() {
        let f2 = PrimeField::new(2).unwrap();
        let c = Matrix::from_rows(f2, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(matrix_minpoly(&c).unwrap(), Polynomial::new(f2, vec![1, 1, 1]));
    }

    #[test]
    fn dual_check_agrees_with_linear_system() {
        let a = alg();
        let k = a.field().clone();
        let e = Subspace::from_vectors(k.clone(), 4, vec![vector::unit(&k, 4, 0), vector::unit(&k, 4, 1)]).unwrap();
        let tangent = dual_tangent_space(&e, &a).unwrap();
        assert_eq!(tangent.dim(), 2);
        let zero = vec![vector::zero(&k, 4), vector::zero(&k, 4)];
        assert!(invariant_dual_check(&e, &zero, &a).unwrap());
        for coeffs in [[1, 0, 0, 1], [1, 0, 0, 0], [0, 1, -1, 0], [2, 3, -3, -1], [0, 0, 1, 0], [0, -1, 1, -1]] {
            let x: Vec<_> = coeffs.iter().map(|&c| k.int(c)).collect();
            let psi = vec![
                vec![k.zero(), k.zero(), x[0].clone(), x[1].clone()],
                vec![k.zero(), k.zero(), x[2].clone(), x[3].clone()],
            ];
            assert_eq!(invariant_dual_check(&e, &psi, &a).unwrap(), tangent.contains(&x).unwrap(), "{coeffs:?}");
        }
    }
}

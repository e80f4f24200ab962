//! The invariant wedge span `∧^m_A`: the span inside `∧^m F^n` of the
//! Plücker vectors of all `A`-invariant `m`-dimensional subspaces.
//!
//! Three routes produce an [`InvariantWedgeSpace`]:
//!
//! * [`lambda_a_chart_grid`] evaluates the affine charts of a homogeneous
//!   module on a finite grid. Each Plücker coordinate of a chart module is a
//!   polynomial of degree at most `m` in every chart parameter, and such a
//!   polynomial is determined by its values on `m + 1` points per parameter,
//!   so the grid span is the whole span.
//! * [`lambda_a_sampled`] closes structured and random vectors under `A` and
//!   keeps the `m`-dimensional results. It only ever gives a lower bound.
//! * Exhaustive enumeration over a finite field, see
//!   [`crate::paramspace::ff_enumerate`].
//!
//! Every space keeps the invariant subspaces whose Plücker vectors span it.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{vector, Matrix, Subspace};
use crate::exterior::{plucker, wedge_in, WedgeIndex, WedgeVector};
use crate::field::Field;
use crate::fieldtower::FieldTower;
use crate::modalg::{generate_submodule, is_invariant, MatrixAlgebra};

/// Default number of consecutive non-growing rounds before sampling stops.
pub const DEFAULT_ROUNDS: usize = 8;

/// Refuse chart grids with more points than this.
pub const GRID_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    ExactChartGrid,
    SampledLowerBound { seed: u64, rounds: usize },
    ExactEnumeration,
}

impl Provenance {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Provenance::SampledLowerBound { .. })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ExactChartGrid => write!(f, "exact_chart_grid"),
            Provenance::SampledLowerBound { seed, rounds } => {
                write!(f, "sampled_lower_bound(seed={seed}, rounds={rounds})")
            }
            Provenance::ExactEnumeration => write!(f, "exact_enumeration"),
        }
    }
}

/// `K^n = S^{⊕l}` with `dim S = m`, blocks of `m` consecutive coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockShape {
    pub l: usize,
    pub m: usize,
}

impl BlockShape {
    pub fn n(&self) -> usize {
        self.l * self.m
    }

    /// Number of free chart parameters, `lm − m`.
    pub fn num_params(&self) -> usize {
        self.n() - self.m
    }

    /// Column indices of block `i` (0-based).
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        i * self.m..(i + 1) * self.m
    }
}

/// The principal generator of chart `chart` (0-based): 1 at the first slot of
/// that block, zeros in the rest of it, and `params` filling the other blocks
/// in coordinate order.
pub fn chart_vector<F: Field>(field: &F, shape: BlockShape, chart: usize, params: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if params.len() != shape.num_params() {
        return Err(Error::DimensionMismatch { expected: shape.num_params(), found: params.len() });
    }
    let mut v = Vec::with_capacity(shape.n());
    let mut it = params.iter();
    for b in 0..shape.l {
        if b == chart {
            v.push(field.one());
            v.extend((1..shape.m).map(|_| field.zero()));
        } else {
            v.extend(it.by_ref().take(shape.m).cloned());
        }
    }
    Ok(v)
}

#[derive(Clone, PartialEq)]
pub struct InvariantWedgeSpace<F: Field> {
    algebra: MatrixAlgebra<F>,
    index: Arc<WedgeIndex>,
    basis: Subspace<F>,
    provenance: Provenance,
    certificates: Vec<Subspace<F>>,
    skipped: usize,
}

impl<F: Field> InvariantWedgeSpace<F> {
    /// Accumulates Plücker vectors of invariant subspaces, keeping the ones
    /// that enlarge the span as certificates.
    pub(crate) fn builder(algebra: &MatrixAlgebra<F>, m: usize, provenance: Provenance) -> Self {
        let index = Arc::new(WedgeIndex::new(algebra.n(), m));
        let basis = Subspace::zero(algebra.field().clone(), index.len());
        Self { algebra: algebra.clone(), index, basis, provenance, certificates: Vec::new(), skipped: 0 }
    }

    /// Adds an invariant subspace of dimension `m`; returns whether the span
    /// grew.
    pub(crate) fn offer(&mut self, module: Subspace<F>) -> Result<bool> {
        let p = plucker(module.basis())?;
        if self.basis.contains(p.coeffs())? {
            return Ok(false);
        }
        let f = self.algebra.field().clone();
        let added = Subspace::from_vectors(f, self.index.len(), vec![p.into_coeffs()])?;
        self.basis = self.basis.sum(&added)?;
        self.certificates.push(module);
        Ok(true)
    }

    pub fn algebra(&self) -> &MatrixAlgebra<F> {
        &self.algebra
    }

    pub fn index(&self) -> &Arc<WedgeIndex> {
        &self.index
    }

    pub fn m(&self) -> usize {
        self.index.m()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The span as a subspace of the `C(n, m)`-dimensional coordinate space.
    pub fn basis(&self) -> &Subspace<F> {
        &self.basis
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Invariant subspaces whose Plücker vectors span the space.
    pub fn certificates(&self) -> &[Subspace<F>] {
        &self.certificates
    }

    /// Grid points whose chart module did not have dimension `m`.
    pub fn skipped_points(&self) -> usize {
        self.skipped
    }

    /// Membership of a wedge vector over the same field.
    pub fn contains(&self, w: &WedgeVector<F>) -> Result<bool> {
        if **w.index() != *self.index {
            return Err(Error::DimensionMismatch { expected: self.index.len(), found: w.index().len() });
        }
        if w.field() != self.algebra.field() {
            return Err(Error::FieldMismatch);
        }
        self.basis.contains(w.coeffs())
    }

    /// Re-derives the span from the certificates and re-checks that each is
    /// an invariant subspace of dimension `m`.
    pub fn verify_certificates(&self) -> Result<bool> {
        let mut vectors = Vec::new();
        for c in &self.certificates {
            if c.dim() != self.m() || !is_invariant(c, &self.algebra)? {
                return Ok(false);
            }
            vectors.push(plucker(c.basis())?.into_coeffs());
        }
        let span = Subspace::from_vectors(self.algebra.field().clone(), self.index.len(), vectors)?;
        Ok(span == self.basis)
    }

    /// Basis vectors as wedge vectors.
    pub fn basis_wedges(&self) -> Vec<WedgeVector<F>> {
        self.basis
            .basis_vectors()
            .into_iter()
            .map(|c| WedgeVector::new(self.algebra.field().clone(), self.index.clone(), c).expect("basis length"))
            .collect()
    }
}

impl InvariantWedgeSpace<FieldTower> {
    /// The span with its basis included into a tower that has `K` as prefix.
    pub fn lifted_basis(&self, target: &FieldTower) -> Result<Subspace<FieldTower>> {
        self.basis.map(target.clone(), |x| target.include(x))
    }
}

impl<F: Field> fmt::Debug for InvariantWedgeSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantWedgeSpace")
            .field("n", &self.index.n())
            .field("m", &self.index.m())
            .field("dim", &self.dim())
            .field("provenance", &self.provenance)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Membership of `w` in `L` extended to the field of `w`, which must be `L`'s
/// field or a tower having it as a prefix.
pub fn member(w: &WedgeVector<FieldTower>, l: &InvariantWedgeSpace<FieldTower>) -> Result<bool> {
    if **w.index() != **l.index() {
        return Err(Error::DimensionMismatch { expected: l.index().len(), found: w.index().len() });
    }
    let k = l.algebra().field();
    if w.field() == k {
        return l.contains(w);
    }
    if !k.is_prefix_of(w.field()) {
        return Err(Error::FieldMismatch);
    }
    l.lifted_basis(w.field())?.contains(w.coeffs())
}

/// `∧^m_A` from the chart atlas of a homogeneous module `K^n = S^{⊕l}`.
///
/// Chart parameters range over `{0, 1, ..., m}`, or over the whole field
/// when it has at most `m + 1` elements.
pub fn lambda_a_chart_grid<F: Field>(alg: &MatrixAlgebra<F>, shape: BlockShape) -> Result<InvariantWedgeSpace<F>> {
    let m = shape.m;
    let mut out = InvariantWedgeSpace::builder(alg, m, Provenance::ExactChartGrid);
    let f = alg.field();
    if m == 0 {
        out.offer(Subspace::zero(f.clone(), alg.n()))?;
        return Ok(out);
    }
    if shape.n() != alg.n() {
        return Err(Error::HomogeneityViolated(format!(
            "{} blocks of size {m} do not fill dimension {}",
            shape.l,
            alg.n()
        )));
    }
    let nvals = match f.order() {
        Some(q) => (m as u64 + 1).min(q) as usize,
        None => m + 1,
    };
    let values: Vec<F::Elem> = (0..nvals as i64).map(|v| f.from_i64(v)).collect();
    let np = shape.num_params();
    let points = (nvals as u128).checked_pow(np as u32).unwrap_or(u128::MAX).saturating_mul(shape.l as u128);
    if points > GRID_LIMIT {
        return Err(Error::TooLarge { count: points, limit: GRID_LIMIT });
    }
    for chart in 0..shape.l {
        let mut hits = 0usize;
        let mut digits = vec![0usize; np];
        loop {
            let params: Vec<F::Elem> = digits.iter().map(|&d| values[d].clone()).collect();
            let gen = chart_vector(f, shape, chart, &params)?;
            let module = generate_submodule(&[gen], alg)?;
            if module.dim() == m {
                hits += 1;
                out.offer(module)?;
            } else {
                out.skipped += 1;
            }
            if !advance(&mut digits, nvals) {
                break;
            }
        }
        if hits == 0 {
            return Err(Error::HomogeneityViolated(format!(
                "no point of chart {} generates a module of dimension {m}",
                chart + 1
            )));
        }
    }
    Ok(out)
}

/// Mixed-radix increment; false after the last tuple.
pub(crate) fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// A lower bound for `∧^m_A` by saturation.
///
/// A round closes `n` candidate tuples under `A`; tuples of `t` vectors are
/// tried with `t` cycling through `1..=m`. Unit vectors and pairs `e_i ± e_j`
/// come first, then seeded random sparse vectors with coefficients in
/// `{−3, ..., 3} \ {0}`. Sampling stops after `rounds` consecutive rounds
/// that do not enlarge the span, or once the span is everything.
pub fn lambda_a_sampled<F: Field>(alg: &MatrixAlgebra<F>, m: usize, seed: u64, rounds: usize) -> Result<InvariantWedgeSpace<F>> {
    let n = alg.n();
    let f = alg.field().clone();
    let mut out = InvariantWedgeSpace::builder(alg, m, Provenance::SampledLowerBound { seed, rounds });
    if m == 0 {
        out.offer(Subspace::zero(f, n))?;
        return Ok(out);
    }
    if m > n {
        return Ok(out);
    }
    let full = out.index.len();
    let mut structured: Vec<Vec<F::Elem>> = (0..n).map(|i| vector::unit(&f, n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for s in [1, -1] {
                let mut v = vector::unit(&f, n, i);
                v[j] = f.from_i64(s);
                structured.push(v);
            }
        }
    }
    let mut structured = structured.into_iter();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idle = 0;
    let mut tuple_size = 0;
    while idle < rounds && out.dim() < full {
        let mut grew = false;
        for _ in 0..n.max(1) {
            tuple_size = tuple_size % m + 1;
            let vs: Vec<Vec<F::Elem>> = (0..tuple_size)
                .map(|_| structured.next().unwrap_or_else(|| random_sparse(&f, n, &mut rng)))
                .collect();
            let module = generate_submodule(&vs, alg)?;
            if module.dim() == m {
                grew |= out.offer(module)?;
            }
        }
        idle = if grew { 0 } else { idle + 1 };
    }
    Ok(out)
}

fn random_sparse<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let support = rng.gen_range(1..=n);
    let mut v = vector::zero(f, n);
    for _ in 0..support {
        let i = rng.gen_range(0..n);
        let mut c = rng.gen_range(-3..=2);
        if c >= 0 {
            c += 1;
        }
        v[i] = f.from_i64(c);
    }
    v
}

/// `w_n = Σ w_{s1}a_1 ∧ ... ∧ w_{sm}a_m` over all sequences `s` in which
/// index `i` occurs `counts[i]` times.
pub fn multiset_wedge_generator<F: Field>(ws: &[Vec<F::Elem>], algebra_elems: &[Matrix<F>], counts: &[usize]) -> Result<WedgeVector<F>> {
    if counts.len() != ws.len() {
        return Err(Error::MalformedMultiset(format!("{} counts for {} vectors", counts.len(), ws.len())));
    }
    let m: usize = counts.iter().sum();
    if m != algebra_elems.len() {
        return Err(Error::MalformedMultiset(format!(
            "counts sum to {m} but {} algebra elements were given",
            algebra_elems.len()
        )));
    }
    let n = ws.first().map(Vec::len).ok_or_else(|| Error::MalformedMultiset("no vectors".into()))?;
    let f = algebra_elems
        .first()
        .map(|a| a.field().clone())
        .ok_or_else(|| Error::MalformedMultiset("empty multiset".into()))?;
    let index = Arc::new(WedgeIndex::new(n, m));
    let mut acc = WedgeVector::zero(f.clone(), index.clone());
    let mut remaining = counts.to_vec();
    let mut seq = Vec::with_capacity(m);
    let mut sequences = Vec::new();
    multiset_sequences(&mut remaining, &mut seq, m, &mut sequences);
    for s in sequences {
        let rows = s
            .iter()
            .zip(algebra_elems)
            .map(|(&i, a)| a.left_apply(&ws[i]))
            .collect::<Result<Vec<_>>>()?;
        acc = acc.add(&wedge_in(&f, &index, &rows)?)?;
    }
    Ok(acc)
}

fn multiset_sequences(remaining: &mut [usize], seq: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
    if seq.len() == len {
        out.push(seq.clone());
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            seq.push(i);
            multiset_sequences(remaining, seq, len, out);
            seq.pop();
            remaining[i] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::FieldElement;

    fn towers() -> (FieldTower, FieldTower) {
        let k = FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap();
        let f = FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap();
        (k, f)
    }

    fn phi_rho(k: &FieldTower) -> Matrix<FieldTower> {
        k.parse_matrix(&[&["0", "-r", "0", "0"], &["r", "-r", "0", "0"], &["0", "0", "0", "-r"], &["0", "0", "r", "-r"]])
            .unwrap()
    }

    fn alg(k: &FieldTower) -> MatrixAlgebra<FieldTower> {
        MatrixAlgebra::new(k.clone(), vec![phi_rho(k)]).unwrap()
    }

    fn wedge_terms(k: &FieldTower, terms: &[(&[usize], &str)]) -> WedgeVector<FieldTower> {
        let terms: Vec<(&[usize], FieldElement)> = terms.iter().map(|(s, c)| (*s, k.parse(c).unwrap())).collect();
        WedgeVector::from_terms(k.clone(), Arc::new(WedgeIndex::new(4, 2)), &terms).unwrap()
    }

    #[test]
    fn chart_grid_for_vlambda_squared() {
        let (k, _) = towers();
        let a = alg(&k);
        let l = lambda_a_chart_grid(&a, BlockShape { l: 2, m: 2 }).unwrap();
        assert_eq!(l.dim(), 4);
        assert_eq!(l.provenance(), Provenance::ExactChartGrid);
        assert_eq!(l.skipped_points(), 0);
        let expected = [
            wedge_terms(&k, &[(&[1, 2], "1")]),
            wedge_terms(&k, &[(&[3, 4], "1")]),
            wedge_terms(&k, &[(&[1, 4], "1"), (&[2, 3], "-1")]),
            wedge_terms(&k, &[(&[1, 3], "1"), (&[2, 3], "-1"), (&[2, 4], "1")]),
        ];
        let span = Subspace::from_vectors(k.clone(), 6, expected.iter().map(|w| w.coeffs().to_vec()).collect()).unwrap();
        assert_eq!(*l.basis(), span);
        assert!(l.verify_certificates().unwrap());
    }

    #[test]
    fn sampled_matches_chart_grid() {
        let (k, _) = towers();
        let a = alg(&k);
        let grid = lambda_a_chart_grid(&a, BlockShape { l: 2, m: 2 }).unwrap();
        let sampled = lambda_a_sampled(&a, 2, 42, DEFAULT_ROUNDS).unwrap();
        assert_eq!(sampled.basis(), grid.basis());
        assert!(sampled.verify_certificates().unwrap());
    }

    #[test]
    fn degenerate_degrees() {
        let (k, _) = towers();
        let a = alg(&k);
        let l0 = lambda_a_chart_grid(&a, BlockShape { l: 2, m: 0 }).unwrap();
        assert_eq!(l0.dim(), 1);
        let l5 = lambda_a_sampled(&a, 5, 0, 2).unwrap();
        assert_eq!(l5.dim(), 0);
    }

    #[test]
    fn chart_grid_detects_wrong_shape() {
        let (k, _) = towers();
        let a = alg(&k);
        assert!(matches!(lambda_a_chart_grid(&a, BlockShape { l: 4, m: 1 }), Err(Error::HomogeneityViolated(_))));
        assert!(matches!(lambda_a_chart_grid(&a, BlockShape { l: 1, m: 2 }), Err(Error::HomogeneityViolated(_))));
    }

    #[test]
    fn multiset_wedge_generator_examples() {
        let (k, _) = towers();
        let e = |i| vector::unit(&k, 4, i);
        let id = Matrix::identity(k.clone(), 4);
        let p = phi_rho(&k);
        let w = multiset_wedge_generator(&[e(0), e(2)], &[id.clone(), p.clone()], &[1, 1]).unwrap();
        assert_eq!(w, wedge_terms(&k, &[(&[1, 4], "-r"), (&[2, 3], "r")]));
        let w = multiset_wedge_generator(&[e(0), e(3)], &[id.clone(), p.clone()], &[1, 1]).unwrap();
        // ρ(e1∧e3 − e1∧e4 − e4∧e2)
        assert_eq!(w, wedge_terms(&k, &[(&[1, 3], "r"), (&[1, 4], "-r"), (&[2, 4], "r")]));
        let w = multiset_wedge_generator(&[e(0)], &[id.clone(), p.clone()], &[2]).unwrap();
        assert_eq!(w, wedge_terms(&k, &[(&[1, 2], "-r")]));
        assert!(matches!(multiset_wedge_generator(&[e(0)], &[id, p], &[1]), Err(Error::MalformedMultiset(_))));
    }

    #[test]
    fn membership_over_extension() {
        let (k, f) = towers();
        let l = lambda_a_chart_grid(&alg(&k), BlockShape { l: 2, m: 2 }).unwrap();
        let idx = l.index().clone();
        let w = |s: &[&str]| WedgeVector::new(f.clone(), idx.clone(), f.parse_vector(s).unwrap()).unwrap();
        assert!(member(&w(&["0", "1", "z^2", "z", "1", "0"]), &l).unwrap());
        assert!(!member(&w(&["0", "1", "z", "z", "z^2", "0"]), &l).unwrap());
        assert!(member(&w(&["0", "0", "0", "0", "0", "0"]), &l).unwrap());
        let g = FieldTower::new(&[("i", "i^2 + 1")], 0).unwrap();
        let wi = WedgeVector::zero(g, idx);
        assert_eq!(member(&wi, &l), Err(Error::FieldMismatch));
    }
}

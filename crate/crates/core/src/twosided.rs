//! Two-sided vector spaces `K^n_φ`: `K` acts on the left by scalars and on
//! the right through a ring homomorphism `φ: K → M_n(K)`,
//! `(v_1, ..., v_n)·x = (v_1, ..., v_n)φ(x)`.
//!
//! Simples are indexed by orbits of embeddings `λ: K → F`; the simple
//! `V(λ)` is realized over `K` by the companion matrix of the minimal
//! polynomial of `λ(g)` over `K`, where `g` generates `K` over the base `k`.
//! Classification, product-level points and the restricted minimal
//! polynomial check all assume `K` has exactly one generator above `k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::field::Field;
use crate::fieldtower::{Embedding, FieldElement, FieldTower};
use crate::modalg::{is_invariant, matrix_minpoly, MatrixAlgebra};
use crate::paramspace::{classify_point_in, PointVerdict};
use crate::poly::Polynomial;
use crate::wedgeinv::{lambda_a_chart_grid, lambda_a_sampled, BlockShape, InvariantWedgeSpace, DEFAULT_ROUNDS};

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedStructure {
    field: FieldTower,
    n: usize,
    phi_images: Vec<Matrix<FieldTower>>,
    validated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl TwoSidedStructure {
    /// `φ` given by the images of the generators of `K`, in tower order.
    pub fn new(field: FieldTower, phi_images: Vec<Matrix<FieldTower>>) -> Result<Self> {
        if phi_images.len() != field.num_levels() {
            return Err(Error::DimensionMismatch { expected: field.num_levels(), found: phi_images.len() });
        }
        let n = phi_images.first().map_or(1, Matrix::rows);
        for m in &phi_images {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
            }
            if *m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self { field, n, phi_images, validated: false })
    }

    /// Parses generator images given as rows of element literals.
    pub fn parse(field: FieldTower, images: &[&[&[&str]]]) -> Result<Self> {
        let mats = images.iter().map(|rows| field.parse_matrix(rows)).collect::<Result<Vec<_>>>()?;
        Self::new(field, mats)
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi_images(&self) -> &[Matrix<FieldTower>] {
        &self.phi_images
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `φ(x)` for any `x ∈ K`, expanded over the monomial basis.
    pub fn phi(&self, x: &FieldElement) -> Result<Matrix<FieldTower>> {
        if *x.tower() != self.field {
            return Err(Error::FieldMismatch);
        }
        self.phi_prefix(x.coeffs(), self.field.num_levels())
    }

    fn phi_prefix(&self, coeffs: &[num_rational::BigRational], levels: usize) -> Result<Matrix<FieldTower>> {
        let k = &self.field;
        let mut powers: Vec<Vec<Matrix<FieldTower>>> = Vec::new();
        for j in 0..levels {
            let mut row = vec![Matrix::identity(k.clone(), self.n)];
            for _ in 1..k.level_degree(j) {
                let next = row.last().unwrap().mul(&self.phi_images[j])?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Matrix::zeros(k.clone(), self.n, self.n);
        for (idx, c) in coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let exps = k.basis_exponents(idx);
            let mut term = Matrix::scalar(k.clone(), self.n, &k.rational(c.clone()));
            for (j, &e) in exps.iter().enumerate().take(levels) {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Checks that each image satisfies its generator's minimal polynomial
    /// (coefficients mapped through `φ`), that the images commute, and that
    /// base generators act as scalars. Marks the structure validated on
    /// success.
    pub fn validate(&mut self) -> ValidationReport {
        let report = self.validation_report();
        self.validated = report.ok;
        report
    }

    pub fn validation_report(&self) -> ValidationReport {
        let k = &self.field;
        let mut failures = Vec::new();
        let symbols: Vec<&str> = k.symbols().collect();
        for j in 0..k.num_levels() {
            let p = k.level_minpoly_below(j);
            let mut value = Matrix::zeros(k.clone(), self.n, self.n);
            let mut power = Matrix::identity(k.clone(), self.n);
            for c in p.coeffs() {
                let mut padded = c.coeffs().to_vec();
                padded.resize(k.degree(), num_traits::Zero::zero());
                let phic = self.phi_prefix(&padded, j).expect("square images");
                value = value.add(&phic.mul(&power).expect("square")).expect("square");
                power = power.mul(&self.phi_images[j]).expect("square");
            }
            if !value.is_zero() {
                failures.push(format!(
                    "minimal polynomial {} of `{}` does not vanish at φ({})",
                    p.format(symbols[j]),
                    symbols[j],
                    symbols[j]
                ));
            }
            if j < k.base_marker() {
                let scalar = Matrix::scalar(k.clone(), self.n, &k.generator(j));
                if self.phi_images[j] != scalar {
                    failures.push(format!("base generator `{}` must act as a scalar", symbols[j]));
                }
            }
            for i in 0..j {
                let ab = self.phi_images[i].mul(&self.phi_images[j]).expect("square");
                let ba = self.phi_images[j].mul(&self.phi_images[i]).expect("square");
                if ab != ba {
                    failures.push(format!("φ({}) and φ({}) do not commute", symbols[i], symbols[j]));
                }
            }
        }
        ValidationReport { ok: failures.is_empty(), failures }
    }

    /// `im φ` as a matrix algebra, generated by the generator images.
    pub fn algebra(&self) -> Result<MatrixAlgebra<FieldTower>> {
        if self.phi_images.is_empty() {
            return MatrixAlgebra::new(self.field.clone(), vec![Matrix::identity(self.field.clone(), self.n)]);
        }
        MatrixAlgebra::new(self.field.clone(), self.phi_images.clone())
    }

    fn primitive_level(&self) -> Result<usize> {
        primitive_level(&self.field)
    }

    /// `φ(g)` for the generator `g` of `K` over `k`.
    pub fn primitive_image(&self) -> Result<&Matrix<FieldTower>> {
        Ok(&self.phi_images[self.primitive_level()?])
    }
}

fn primitive_level(k: &FieldTower) -> Result<usize> {
    if k.num_levels() != k.base_marker() + 1 {
        return Err(Error::Unsupported(format!(
            "K must have exactly one generator above the base field; it has {}",
            k.num_levels() - k.base_marker()
        )));
    }
    Ok(k.base_marker())
}

/// A set of embeddings `K → F` closed under conjugation over `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingOrbit {
    members: Vec<Embedding>,
    minpoly: Polynomial<FieldTower>,
}

impl EmbeddingOrbit {
    /// Validates every member and checks that the images of the generator
    /// are exactly the roots of one minimal polynomial over `K`, which must
    /// be a prefix of `F`.
    pub fn new(members: Vec<Embedding>) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::Invalid("an orbit needs at least one embedding".into()))?;
        let (k, f) = (first.source().clone(), first.target().clone());
        let level = primitive_level(&k)?;
        if !k.is_prefix_of(&f) {
            return Err(Error::Invalid("the target field must contain K as a prefix".into()));
        }
        for (i, e) in members.iter().enumerate() {
            if *e.source() != k || *e.target() != f {
                return Err(Error::FieldMismatch);
            }
            let report = e.validate();
            if !report.ok {
                return Err(Error::Invalid(format!("embedding {}: {}", i + 1, report.failures.join("; "))));
            }
            if members[..i].iter().any(|o| o.images()[level] == e.images()[level]) {
                return Err(Error::Invalid(format!("embedding {} is repeated", i + 1)));
            }
        }
        let k_in_f = f.prefix(k.num_levels());
        let minpoly = f.minpoly_over(&first.images()[level], &k_in_f)?;
        let minpoly = minpoly.map(k.clone(), |c| Ok(k.element(c.coeffs().to_vec())))?;
        for (i, e) in members.iter().enumerate() {
            let lifted = minpoly.map(f.clone(), |c| f.include(c))?;
            if !lifted.eval(&e.images()[level]).is_zero() {
                return Err(Error::Invalid(format!("embedding {} is not conjugate to the first", i + 1)));
            }
        }
        if minpoly.degree() != Some(members.len()) {
            return Err(Error::Invalid(format!(
                "orbit has {} members but the minimal polynomial {} has degree {}",
                members.len(),
                minpoly.format("x"),
                minpoly.degree().unwrap_or(0)
            )));
        }
        Ok(Self { members, minpoly })
    }

    pub fn members(&self) -> &[Embedding] {
        &self.members
    }

    /// Minimal polynomial over `K` of the generator images.
    pub fn minpoly(&self) -> &Polynomial<FieldTower> {
        &self.minpoly
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Companion matrix with `C[i+1][i] = 1` and last column `−c_0, ..., −c_{d−1}`.
pub fn companion<F: Field>(p: &Polynomial<F>) -> Result<Matrix<F>> {
    let d = p.degree().ok_or(Error::DivisionByZero)?;
    if !p.is_monic() {
        return Err(Error::Certificate("companion matrices need monic polynomials".into()));
    }
    let f = p.field();
    let mut c = Matrix::zeros(f.clone(), d, d);
    for i in 0..d {
        if i + 1 < d {
            c.set(i + 1, i, f.one());
        }
        c.set(i, d - 1, f.neg(&p.coeffs()[i]));
    }
    Ok(c)
}

/// The simple two-sided space of an orbit: `φ(g)` is the companion matrix of
/// the orbit's minimal polynomial and base generators act as scalars.
pub fn build_v_lambda(orbit: &EmbeddingOrbit) -> Result<TwoSidedStructure> {
    let k = orbit.members[0].source().clone();
    let level = primitive_level(&k)?;
    let c = companion(&orbit.minpoly)?;
    let d = c.rows();
    let images = (0..k.num_levels())
        .map(|j| if j == level { c.clone() } else { Matrix::scalar(k.clone(), d, &k.generator(j)) })
        .collect();
    let mut v = TwoSidedStructure::new(k, images)?;
    let report = v.validate();
    if !report.ok {
        return Err(Error::Invalid(report.failures.join("; ")));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTerm {
    /// The simple's minimal polynomial over `K`, in `x`.
    pub simple: String,
    /// Index of the matching supplied orbit, if any.
    pub orbit: Option<usize>,
    /// `dim_K` of the simple.
    pub size: usize,
    pub multiplicity: usize,
}

/// The class `[W]`: simples with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankVector {
    pub terms: Vec<RankTerm>,
}

impl RankVector {
    pub fn dimension(&self) -> usize {
        self.terms.iter().map(|t| t.size * t.multiplicity).sum()
    }
}

/// One homogeneous component of `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub certificate: Polynomial<FieldTower>,
    /// `p / gcd(p, p')`: the simple's minimal polynomial.
    pub squarefree: Polynomial<FieldTower>,
    /// `ker q(φ(g))`, the socle part.
    pub socle: Subspace<FieldTower>,
    /// `ker p(φ(g))`, the whole primary component.
    pub full: Subspace<FieldTower>,
    pub multiplicity: usize,
    pub orbit: Option<usize>,
    /// Basis of the socle part in which `φ(g)` acts by identical companion
    /// blocks `(v, vP, ..., vP^{d−1})`.
    pub adapted_basis: Matrix<FieldTower>,
}

impl Component {
    pub fn simple_dim(&self) -> usize {
        self.squarefree.degree().unwrap_or(0)
    }

    pub fn is_semisimple(&self) -> bool {
        self.socle == self.full
    }

    /// `φ(g)` restricted to the socle part, in adapted coordinates.
    pub fn restricted_action(&self, p: &Matrix<FieldTower>) -> Result<Matrix<FieldTower>> {
        restrict(&self.adapted_basis, p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub rank: RankVector,
    pub components: Vec<Component>,
    /// False when some component is larger than its socle; the rank then
    /// describes the socle only.
    pub semisimple: bool,
}

/// Splits `V` along a user-supplied coprime factorization of the minimal
/// polynomial of `φ(g)` over `K` and identifies each factor's simple.
pub fn classify(v: &TwoSidedStructure, certificates: &[Polynomial<FieldTower>], orbits: &[EmbeddingOrbit]) -> Result<Classification> {
    if !v.is_validated() {
        let report = v.validation_report();
        if !report.ok {
            return Err(Error::Invalid(report.failures.join("; ")));
        }
    }
    let k = v.field();
    let p_mat = v.primitive_image()?;
    let minpoly = matrix_minpoly(p_mat)?;
    let mut product = Polynomial::constant(k.clone(), k.one());
    for c in certificates {
        if c.field() != k {
            return Err(Error::FieldMismatch);
        }
        if !c.is_monic() {
            return Err(Error::Certificate(format!("{} is not monic", c.format("x"))));
        }
        product = product.mul(c);
    }
    if product != minpoly {
        return Err(Error::Certificate(format!(
            "factors multiply to {} but the minimal polynomial is {}",
            product.format("x"),
            minpoly.format("x")
        )));
    }
    for (i, a) in certificates.iter().enumerate() {
        for b in &certificates[i + 1..] {
            if a.gcd(b).degree() != Some(0) {
                return Err(Error::Certificate(format!("{} and {} are not coprime", a.format("x"), b.format("x"))));
            }
        }
    }
    let mut components = Vec::new();
    let mut terms = Vec::new();
    for c in certificates {
        let q = c.div_rem(&c.gcd(&c.derivative()))?.0.monic();
        let d = q.degree().unwrap_or(0);
        let socle = q.eval_matrix(p_mat)?.left_kernel();
        let full = c.eval_matrix(p_mat)?.left_kernel();
        if d == 0 || socle.dim() % d != 0 {
            return Err(Error::Certificate(format!(
                "component of {} has dimension {} not divisible by {}; the factor is not a power of an irreducible",
                c.format("x"),
                socle.dim(),
                d
            )));
        }
        let orbit = orbits.iter().position(|o| *o.minpoly() == q);
        let adapted_basis = adapted_basis(&socle, p_mat, d)?;
        let multiplicity = socle.dim() / d;
        terms.push(RankTerm { simple: q.format("x"), orbit, size: d, multiplicity });
        components.push(Component { certificate: c.clone(), squarefree: q, socle, full, multiplicity, orbit, adapted_basis });
    }
    let semisimple = components.iter().all(Component::is_semisimple);
    Ok(Classification { rank: RankVector { terms }, components, semisimple })
}

/// Greedy cyclic basis `v, vP, ..., vP^{d−1}` for each new `v` taken from the
/// canonical basis of `c`.
fn adapted_basis(c: &Subspace<FieldTower>, p: &Matrix<FieldTower>, d: usize) -> Result<Matrix<FieldTower>> {
    let k = c.field().clone();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let mut span = Subspace::zero(k.clone(), c.ambient_dim());
    for v in c.basis_vectors() {
        if span.contains(&v)? {
            continue;
        }
        let mut w = v;
        for _ in 0..d {
            let next = p.left_apply(&w)?;
            rows.push(std::mem::replace(&mut w, next));
        }
        span = Subspace::from_vectors(k.clone(), c.ambient_dim(), rows.clone())?;
        if span.dim() != rows.len() {
            return Err(Error::Certificate("cyclic blocks are not independent".into()));
        }
    }
    Matrix::from_rows_with_cols(k, rows, c.ambient_dim())
}

/// The matrix of `v ↦ v·p` on the row space of `basis`, in that basis.
fn restrict<F: Field>(basis: &Matrix<F>, p: &Matrix<F>) -> Result<Matrix<F>> {
    let f = basis.field().clone();
    let mut rows = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let image = p.left_apply(basis.row(i))?;
        rows.push(basis.solve_left(&image).ok_or(Error::NotInvariant)?);
    }
    Matrix::from_rows_with_cols(f, rows, basis.rows())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductVerdict {
    pub is_f: bool,
    pub is_g: bool,
    pub is_h: bool,
    /// Set when `M` does not split along the components with the requested
    /// rank; all three verdicts are then false.
    pub empty_functor: Option<String>,
    pub components: Vec<PointVerdict>,
}

/// Classifies `M ⊂ F^n` as a point of the product of per-component functors
/// for the rank with multiplicity `rank[j]` in component `j`.
///
/// `M_j = M ∩ C_j` is taken in each socle component. If the `M_j` do not add
/// up to `M`, or `dim M_j ≠ rank[j] · dim S_j`, the point belongs to the empty
/// functor. Otherwise each `M_j` is classified in adapted coordinates against
/// the component's own `∧_{im φ_j}`.
pub fn classify_product_point(
    v: &TwoSidedStructure,
    cls: &Classification,
    m: &Subspace<FieldTower>,
    rank: &[usize],
) -> Result<ProductVerdict> {
    if rank.len() != cls.components.len() {
        return Err(Error::DimensionMismatch { expected: cls.components.len(), found: rank.len() });
    }
    let f = m.field().clone();
    let k = v.field();
    if !k.is_prefix_of(&f) {
        return Err(Error::FieldMismatch);
    }
    let p = v.primitive_image()?;
    let empty = |reason: String| ProductVerdict { is_f: false, is_g: false, is_h: false, empty_functor: Some(reason), components: Vec::new() };
    let mut parts = Vec::new();
    let mut total = 0;
    for (j, c) in cls.components.iter().enumerate() {
        let basis = c.adapted_basis.lift_to(&f)?;
        let cj = Subspace::row_space(&basis);
        let mj = m.intersect(&cj)?;
        total += mj.dim();
        let want = rank[j] * c.simple_dim();
        if mj.dim() != want {
            return Ok(empty(format!(
                "component {} meets M in dimension {} but the rank asks for {}",
                j + 1,
                mj.dim(),
                want
            )));
        }
        parts.push((basis, mj));
    }
    if total != m.dim() {
        return Ok(empty(format!("M does not split along the components ({total} of {})", m.dim())));
    }
    let mut components = Vec::new();
    for ((basis, mj), (c, &r)) in parts.into_iter().zip(cls.components.iter().zip(rank)) {
        if r == 0 {
            continue;
        }
        let local = c.restricted_action(p)?;
        let alg_k = MatrixAlgebra::new(k.clone(), vec![local])?;
        let lambda = component_lambda(&alg_k, c, r)?;
        let alg_f = alg_k.lift_to(&f)?;
        let coords = mj
            .basis_vectors()
            .iter()
            .map(|x| basis.solve_left(x).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        let local_m = Subspace::from_vectors(f.clone(), basis.rows(), coords)?;
        components.push(classify_point_in(&local_m, &alg_f, &lambda.lifted_basis(&f)?, lambda.provenance())?);
    }
    let is_f = components.iter().all(|c| c.is_f);
    let is_g = components.iter().all(|c| c.is_g);
    Ok(ProductVerdict { is_f, is_g, is_h: is_f && is_g, empty_functor: None, components })
}

/// `∧^{r·d}` of one component: the chart grid for `r = 1`, where the
/// component is `S^{⊕l}` with `dim S = d`, and sampling otherwise.
fn component_lambda(alg: &MatrixAlgebra<FieldTower>, c: &Component, r: usize) -> Result<InvariantWedgeSpace<FieldTower>> {
    let d = c.simple_dim();
    if r == 1 {
        lambda_a_chart_grid(alg, BlockShape { l: c.multiplicity, m: d })
    } else {
        lambda_a_sampled(alg, r * d, 0, DEFAULT_ROUNDS)
    }
}

/// Whether the minimal polynomial over `F` of `φ(g)` restricted to `M`
/// equals the minimal polynomial of the simple `S`, i.e. whether `M`
/// realizes the full orbit of `S` and not a proper part of it.
pub fn restricted_minpoly_matches(v: &TwoSidedStructure, m: &Subspace<FieldTower>, s: &EmbeddingOrbit) -> Result<bool> {
    let f = m.field().clone();
    let p = v.primitive_image()?.lift_to(&f)?;
    let alg = MatrixAlgebra::new(f.clone(), vec![p.clone()])?;
    if !is_invariant(m, &alg)? {
        return Err(Error::NotInvariant);
    }
    let local = restrict(m.basis(), &p)?;
    let restricted = matrix_minpoly(&local)?;
    let expected = s.minpoly().map(f.clone(), |c| f.include(c))?;
    Ok(restricted == expected)
}

/// The restricted minimal polynomial used by [`restricted_minpoly_matches`].
pub fn restricted_minpoly(v: &TwoSidedStructure, m: &Subspace<FieldTower>) -> Result<Polynomial<FieldTower>> {
    let f = m.field().clone();
    let p = v.primitive_image()?.lift_to(&f)?;
    matrix_minpoly(&restrict(m.basis(), &p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn towers() -> (FieldTower, FieldTower) {
        let k = FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap();
        let f = FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap();
        (k, f)
    }

    fn vlambda2(k: &FieldTower) -> TwoSidedStructure {
        let mut v = TwoSidedStructure::parse(
            k.clone(),
            &[&[&["0", "-r", "0", "0"], &["r", "-r", "0", "0"], &["0", "0", "0", "-r"], &["0", "0", "r", "-r"]]],
        )
        .unwrap();
        assert!(v.validate().ok);
        v
    }

    fn orbit(k: &FieldTower, f: &FieldTower) -> EmbeddingOrbit {
        EmbeddingOrbit::new(vec![
            Embedding::parse(k.clone(), f.clone(), &["r*z"]).unwrap(),
            Embedding::parse(k.clone(), f.clone(), &["r*z^2"]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        let (k, _) = towers();
        vlambda2(&k);
        let mut bad = TwoSidedStructure::parse(k.clone(), &[&[&["0", "1"], &["1", "0"]]]).unwrap();
        assert!(!bad.validate().ok);
        let gi = FieldTower::new(&[("i", "i^2 + 1")], 0).unwrap();
        let mut sigma = TwoSidedStructure::parse(gi, &[&[&["-i", "0"], &["0", "-i"]]]).unwrap();
        assert!(sigma.validate().ok);
    }

    #[test]
    fn base_generators_must_be_central() {
        // K = Q(i)(s), s^2 = 3, over k = Q(i)
        let k = FieldTower::new(&[("i", "i^2 + 1"), ("s", "s^2 - 3")], 1).unwrap();
        let mut bad = TwoSidedStructure::parse(k.clone(), &[&[&["-i"]], &[&["s"]]]).unwrap();
        let report = bad.validate();
        assert!(!report.ok && report.failures[0].contains("scalar"), "{report:?}");
        let mut good = TwoSidedStructure::parse(k, &[&[&["i"]], &[&["-s"]]]).unwrap();
        assert!(good.validate().ok);
    }

    #[test]
    fn v_lambda_construction() {
        let (k, f) = towers();
        let o = orbit(&k, &f);
        assert_eq!(*o.minpoly(), k.parse_polynomial("x^2 + r*x + r^2", "x").unwrap());
        let v = build_v_lambda(&o).unwrap();
        assert_eq!(v.phi_images()[0], k.parse_matrix(&[&["0", "-r^2"], &["1", "-r"]]).unwrap());
        let cls = classify(&v, &[o.minpoly().clone()], &[o.clone()]).unwrap();
        assert_eq!(cls.rank.terms.len(), 1);
        assert_eq!((cls.rank.terms[0].orbit, cls.rank.terms[0].multiplicity), (Some(0), 1));

        let trivial = EmbeddingOrbit::new(vec![Embedding::inclusion(k.clone(), k.clone()).unwrap()]).unwrap();
        let v1 = build_v_lambda(&trivial).unwrap();
        assert_eq!(v1.phi_images()[0], k.parse_matrix(&[&["r"]]).unwrap());

        let gi = FieldTower::new(&[("i", "i^2 + 1")], 0).unwrap();
        let sigma = EmbeddingOrbit::new(vec![Embedding::parse(gi.clone(), gi.clone(), &["-i"]).unwrap()]).unwrap();
        assert_eq!(build_v_lambda(&sigma).unwrap().phi_images()[0], gi.parse_matrix(&[&["-i"]]).unwrap());
    }

    #[test]
    fn orbit_rejects_incomplete_sets() {
        let (k, f) = towers();
        let only = EmbeddingOrbit::new(vec![Embedding::parse(k.clone(), f.clone(), &["r*z"]).unwrap()]);
        assert!(matches!(only, Err(Error::Invalid(_))));
        let mixed = EmbeddingOrbit::new(vec![
            Embedding::parse(k.clone(), f.clone(), &["r*z"]).unwrap(),
            Embedding::parse(k.clone(), f.clone(), &["r"]).unwrap(),
        ]);
        assert!(matches!(mixed, Err(Error::Invalid(_))));
    }

    #[test]
    fn classification_examples() {
        let (k, f) = towers();
        let v = vlambda2(&k);
        let o = orbit(&k, &f);
        let cls = classify(&v, &[o.minpoly().clone()], &[o]).unwrap();
        assert_eq!(cls.rank.terms[0].multiplicity, 2);
        assert_eq!(cls.components[0].socle.dim(), 4);
        assert!(cls.semisimple);
        assert_eq!(cls.rank.dimension(), 4);

        let gi = FieldTower::new(&[("i", "i^2 + 1")], 0).unwrap();
        let sigma = TwoSidedStructure::parse(gi.clone(), &[&[&["-i", "0"], &["0", "-i"]]]).unwrap();
        let cls = classify(&sigma, &[gi.parse_polynomial("x + i", "x").unwrap()], &[]).unwrap();
        assert_eq!((cls.rank.terms[0].size, cls.rank.terms[0].multiplicity), (1, 2));

        let q_k = FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap();
        let id = TwoSidedStructure::parse(q_k.clone(), &[&[&["r"]]]).unwrap();
        let cls = classify(&id, &[q_k.parse_polynomial("x - r", "x").unwrap()], &[]).unwrap();
        assert_eq!(cls.rank.terms[0].multiplicity, 1);
    }

    #[test]
    fn certificate_errors() {
        let (k, _) = towers();
        let v = vlambda2(&k);
        let wrong = k.parse_polynomial("x - r", "x").unwrap();
        assert!(matches!(classify(&v, &[wrong], &[]), Err(Error::Certificate(_))));
        let p = k.parse_polynomial("x^2 + r*x + r^2", "x").unwrap();
        let one = k.parse_polynomial("1", "x").unwrap();
        // a unit factor is coprime and multiplies correctly but is not a power of an irreducible
        assert!(matches!(classify(&v, &[p, one], &[]), Err(Error::Certificate(_))));
    }

    #[test]
    fn non_semisimple_is_flagged() {
        let q = FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap();
        // a Jordan block for ρ: φ(ρ) = [[r, 1], [0, r]] satisfies (x − ρ)^2, not x^3 − 2
        let jordan = TwoSidedStructure::parse(q.clone(), &[&[&["r", "1"], &["0", "r"]]]).unwrap();
        assert!(!jordan.validation_report().ok);
        assert!(matches!(classify(&jordan, &[], &[]), Err(Error::Invalid(_))));
    }

    #[test]
    fn product_points() {
        let (k, f) = towers();
        let v = vlambda2(&k);
        let o = orbit(&k, &f);
        let cls = classify(&v, &[o.minpoly().clone()], &[o.clone()]).unwrap();
        let m = Subspace::row_space(&f.parse_matrix(&[&["1", "z", "0", "0"], &["0", "0", "1", "z^2"]]).unwrap());
        let pv = classify_product_point(&v, &cls, &m, &[1]).unwrap();
        assert_eq!((pv.is_f, pv.is_g, pv.is_h), (true, true, true));
        let mp = Subspace::row_space(&f.parse_matrix(&[&["1", "z", "0", "0"], &["0", "0", "1", "z"]]).unwrap());
        let pv = classify_product_point(&v, &cls, &mp, &[1]).unwrap();
        assert_eq!((pv.is_f, pv.is_g, pv.is_h), (true, false, false));
        assert!(restricted_minpoly_matches(&v, &m, &o).unwrap());
        assert!(!restricted_minpoly_matches(&v, &mp, &o).unwrap());
        assert_eq!(restricted_minpoly(&v, &mp).unwrap(), f.parse_polynomial("x - r*z", "x").unwrap());
    }

    #[test]
    fn mixed_components() {
        let (k, f) = towers();
        let v = TwoSidedStructure::parse(k.clone(), &[&[&["0", "-r", "0"], &["r", "-r", "0"], &["0", "0", "r"]]]).unwrap();
        let o = orbit(&k, &f);
        let certs = [o.minpoly().clone(), k.parse_polynomial("x - r", "x").unwrap()];
        let cls = classify(&v, &certs, &[o]).unwrap();
        assert_eq!(cls.rank.dimension(), 3);
        let line = Subspace::row_space(&k.parse_matrix(&[&["0", "0", "1"]]).unwrap());
        let pv = classify_product_point(&v, &cls, &line, &[0, 1]).unwrap();
        assert_eq!((pv.is_f, pv.is_g, pv.is_h, pv.empty_functor.is_none()), (true, true, true, true));
        let plane = Subspace::row_space(&k.parse_matrix(&[&["1", "0", "0"], &["0", "0", "1"]]).unwrap());
        let pv = classify_product_point(&v, &cls, &plane, &[1, 0]).unwrap();
        assert!(pv.empty_functor.is_some() && !pv.is_f && !pv.is_g && !pv.is_h);
    }
}

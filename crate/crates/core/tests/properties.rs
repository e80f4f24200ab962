use invgrass::exterior::{plucker, wedge, wedge_derivation};
use invgrass::modalg::{generate_submodule, MatrixAlgebra};
use invgrass::{FieldElement, FieldTower, Matrix, PrimeField, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn k() -> FieldTower {
    FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap()
}

fn elem(c: &[i8]) -> FieldElement {
    k().element(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
}

fn elem_strategy() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec(-4i8..=4, 3).prop_map(|c| elem(&c))
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<FieldTower>> {
    // sparse entries keep the rank distribution interesting
    prop::collection::vec(prop::collection::vec(-2i8..=2, 3), rows * cols).prop_map(move |cs| {
        let data = cs.iter().map(|c| if c[0] == 0 { k().int(0) } else { elem(c) }).collect();
        Matrix::new(k(), rows, cols, data).unwrap()
    })
}

fn ff_matrix(p: u64, n: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
    prop::collection::vec(0..p, n * n).prop_map(move |d| Matrix::new(PrimeField::new(p).unwrap(), n, n, d).unwrap())
}

fn ff_vectors(p: u64, n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, n), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn parse_display_round_trip(a in elem_strategy()) {
        prop_assert_eq!(k().parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(3, 4)) {
        let r = m.rref();
        let again = r.matrix.rref();
        prop_assert_eq!(&again.matrix, &r.matrix);
        prop_assert_eq!(again.pivots, r.pivots);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(3, 5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
        prop_assert_eq!(m.rank() + m.left_kernel().dim(), 3);
    }

    #[test]
    fn dimension_formula(a in matrix_strategy(2, 4), b in matrix_strategy(2, 4)) {
        let (u, w) = (Subspace::row_space(&a), Subspace::row_space(&b));
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u).unwrap() && u.contains_subspace(&i).unwrap());
    }

    #[test]
    fn canonical_form_ignores_basis_choice(a in matrix_strategy(2, 4), g in matrix_strategy(2, 2)) {
        prop_assume!(g.determinant().map(|d| !d.is_zero()).unwrap_or(false));
        prop_assert_eq!(Subspace::row_space(&g.mul(&a).unwrap()), Subspace::row_space(&a));
    }

    #[test]
    fn complement_is_a_complement(a in matrix_strategy(2, 4)) {
        let u = Subspace::row_space(&a);
        let c = u.complement();
        prop_assert_eq!(u.dim() + c.dim(), 4);
        prop_assert_eq!(u.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn plucker_antisymmetry_and_scaling(a in matrix_strategy(2, 4), g in matrix_strategy(2, 2)) {
        let f = k();
        let rows = a.row_vecs();
        let swapped = vec![rows[1].clone(), rows[0].clone()];
        let w = wedge(&f, 4, &rows).unwrap();
        prop_assert_eq!(wedge(&f, 4, &swapped).unwrap(), w.scale(&f.int(-1)));
        let det = g.determinant().unwrap();
        prop_assert_eq!(wedge(&f, 4, &g.mul(&a).unwrap().row_vecs()).unwrap(), w.scale(&det));
        if a.rank() == 2 {
            prop_assert_eq!(plucker(&a).unwrap(), w);
        }
    }

    #[test]
    fn derivation_is_linear(e in matrix_strategy(2, 4), p in matrix_strategy(2, 4), q in matrix_strategy(2, 4), c in elem_strategy()) {
        let f = k();
        let (e, p, q) = (e.row_vecs(), p.row_vecs(), q.row_vecs());
        let sum: Vec<Vec<FieldElement>> = p.iter().zip(&q).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect()).collect();
        let scaled: Vec<Vec<FieldElement>> = p.iter().map(|x| x.iter().map(|a| a * &c).collect()).collect();
        let dp = wedge_derivation(&f, &e, &p).unwrap();
        prop_assert_eq!(wedge_derivation(&f, &e, &sum).unwrap(), dp.add(&wedge_derivation(&f, &e, &q).unwrap()).unwrap());
        prop_assert_eq!(wedge_derivation(&f, &e, &scaled).unwrap(), dp.scale(&c));
    }

    #[test]
    fn closure_operator_laws(a in ff_matrix(3, 4), xs in ff_vectors(3, 4, 2), ys in ff_vectors(3, 4, 2)) {
        let f = PrimeField::new(3).unwrap();
        let alg = MatrixAlgebra::new(f.clone(), vec![a]).unwrap();
        let cx = generate_submodule(&xs, &alg).unwrap();
        let union: Vec<Vec<u64>> = xs.iter().chain(&ys).cloned().collect();
        let cxy = generate_submodule(&union, &alg).unwrap();
        for x in &xs {
            prop_assert!(cx.contains(x).unwrap());
        }
        prop_assert_eq!(generate_submodule(&cx.basis_vectors(), &alg).unwrap(), cx.clone());
        prop_assert!(cxy.contains_subspace(&cx).unwrap());
    }
}

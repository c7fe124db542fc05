use proptest::prelude::*;
use ueb_core::{
    cyclic_latin, fourier_hadamard, h_alpha, validate_hadamard, validate_latin, ExactMatrix, PhasedScalar, Rational,
};

fn scalar() -> impl Strategy<Value = PhasedScalar> {
    prop_oneof![
        Just(PhasedScalar::zero()),
        (-3i64..=3).prop_map(PhasedScalar::from_i64),
        (prop::sample::select(vec![3u32, 4, 8]), 0i64..8).prop_map(|(n, k)| PhasedScalar::zeta(n, k)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |e| ExactMatrix::from_entries(rows, cols, e))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_reverses_products(a in matrix(2, 3), b in matrix(3, 2)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.dagger(), b.dagger().matmul(&a.dagger()).unwrap());
    }

    #[test]
    fn trace_is_cyclic(a in matrix(3, 2), b in matrix(2, 3)) {
        prop_assert_eq!(a.matmul(&b).unwrap().trace().unwrap(), b.matmul(&a).unwrap().trace().unwrap());
    }

    #[test]
    fn tensor_mixed_product(a in matrix(2, 2), b in matrix(2, 2), c in matrix(2, 2), d in matrix(2, 2)) {
        let lhs = a.tensor(&b).matmul(&c.tensor(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().tensor(&b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_is_associative(a in matrix(2, 1), b in matrix(1, 2), c in matrix(2, 2)) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn trace_of_tensor_is_product(a in matrix(2, 2), b in matrix(3, 3)) {
        let t = a.tensor(&b).trace().unwrap();
        prop_assert_eq!(t, a.trace().unwrap().mul(&b.trace().unwrap()));
    }

    #[test]
    fn permutation_times_diagonal_is_monomial(
        perm in permutation(5),
        phases in prop::collection::vec(0i64..12, 5),
    ) {
        let p = ExactMatrix::permutation(&perm);
        let d = ExactMatrix::diag(phases.iter().map(|&k| PhasedScalar::zeta(12, k)).collect());
        let pd = p.matmul(&d).unwrap();
        prop_assert!(pd.is_monomial());
        prop_assert_eq!(pd.nonzero_count(), 5);
        prop_assert!(pd.is_scaled_unitary().is_some());
    }

    #[test]
    fn row_permuted_cyclic_squares_are_latin((d, perm) in (1usize..=9).prop_flat_map(|d| (Just(d), permutation(d)))) {
        let l = cyclic_latin(d).permute_rows(&perm);
        let cells: Vec<Vec<i64>> = l.rows().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        prop_assert!(validate_latin(&cells).unwrap().valid);
    }

    #[test]
    fn h_alpha_is_hadamard_for_root_substitutions(n in prop::sample::select(vec![1u32, 2, 3, 4, 5, 8, 12]), k in 0i64..12) {
        let h = h_alpha("t").substitute("t", &PhasedScalar::zeta(n, k)).unwrap();
        prop_assert!(validate_hadamard(&h).unwrap().valid);
    }
}

#[test]
fn fourier_matrices_are_scaled_unitary() {
    for d in 2..=12 {
        let f = fourier_hadamard(d);
        assert_eq!(f.is_scaled_unitary(), Some(Rational::from_integer((d as i64).into())), "d = {d}");
        assert!(f.entries().iter().all(PhasedScalar::is_unit_modulus));
        assert!(validate_hadamard(&f).unwrap().valid);
    }
}

#[test]
fn cyclic_latin_squares_validate() {
    for d in 1..=16 {
        let cells: Vec<Vec<i64>> =
            cyclic_latin(d).rows().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        assert!(validate_latin(&cells).unwrap().valid, "d = {d}");
    }
}

#[test]
fn symbolic_h_alpha_is_hadamard() {
    assert!(validate_hadamard(&h_alpha("t")).unwrap().valid);
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ueb_core::counterexample::{canonical, conjugate, export_bundle, FactorBundle};
use ueb_core::groups::acts_irreducibly;
use ueb_core::nice::heisenberg_matrix;
use ueb_core::{build_conjugators, build_g165, ExactMatrix, FiniteGroup, Heisenberg, Operator};

#[test]
fn one_conjugation_convention_for_fourier() {
    for p in [5usize, 11] {
        let (x, z, f) = (ExactMatrix::pauli_x(p), ExactMatrix::pauli_z(p), ExactMatrix::fourier(p));
        assert_eq!(conjugate(&x, &f).unwrap(), z);
        assert_eq!(conjugate(&z, &f).unwrap(), x.inverse().unwrap());
    }
}

#[test]
fn conjugators_realise_their_automorphism() {
    for p in [5u32, 11] {
        let c = build_conjugators(p, 3).unwrap();
        assert_eq!(c.action.det(), 1);
        assert_eq!(c.action.order(), 3);
        assert!(acts_irreducibly(&c.action));
        assert!(c.sigma.pow(3).is_identity());
        assert!(c.r.is_scaled_unitary().is_some());
        // sigma is rho -> R rho R^dagger, the inverse direction of M -> M^R.
        for g in Heisenberg::new(p).elements() {
            let image = conjugate(&heisenberg_matrix(&g), &c.r.dagger()).unwrap();
            assert_eq!(image, heisenberg_matrix(&c.sigma.apply(&g)), "p = {p}, {g:?}");
        }
    }
}

#[test]
fn mu_is_projective_on_random_pairs() {
    let g = build_g165().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x165);
    let xs = g.random_elements(10_000, &mut rng);
    let ys = g.random_elements(10_000, &mut rng);
    let bad = xs.par_iter().zip(&ys).filter(|(a, b)| !g.phase(a, b).unwrap().is_unit_modulus()).count();
    assert_eq!(bad, 0);
}

#[test]
fn transversal_has_dim_squared_elements() {
    let g = build_g165().unwrap();
    let rep = g.nice_rep().unwrap();
    assert_eq!(rep.order(), 165 * 165);
    assert_eq!(rep.identity(), &g.group.identity());
    assert!(rep.elements().iter().all(|t| canonical(t) == *t));
}

#[test]
fn dense_generators_match_factor_form() {
    let g = build_g165().unwrap();
    let bundle = export_bundle(&g, false);
    let json = serde_json::to_string(&bundle).unwrap();
    let back: FactorBundle = serde_json::from_str(&json).unwrap();
    assert_eq!(back.generators.len(), 6);
    // The first generator only touches the 3-dimensional factor, so its
    // dense form is cheap to compare entrywise.
    let a = &back.generators[0];
    let b = &bundle.generators[0];
    assert_eq!(a.dense(), b.dense());
    assert_eq!(a.trace().unwrap(), a.dense().trace().unwrap());
    assert_eq!(a.gram(), a.dense().gram_scalar());
}

use proptest::prelude::*;
use ueb_core::nice::{cocycle_identity_violation, cocycle_value, extract_full_cocycle, random_triples, Label};
use ueb_core::{
    det_normalize, heisenberg_nice_rep, pauli_rep, verify_nice, verify_ueb, ExactMatrix, PairPlan, PhasedScalar,
    ProjectiveRep,
};

type Rep<E> = ProjectiveRep<E, ExactMatrix>;

fn all_triples<E: Label>(rep: &Rep<E>) -> Vec<(E, E, E)> {
    let els = rep.elements();
    els.iter()
        .flat_map(|a| els.iter().flat_map(move |b| els.iter().map(move |c| (a.clone(), b.clone(), c.clone()))))
        .collect()
}

fn check_cocycle<E: Label>(rep: &Rep<E>, name: &str) {
    let triples = if rep.dim() <= 5 { all_triples(rep) } else { random_triples(rep, 10_000, 0x165) };
    assert_eq!(cocycle_identity_violation(rep, &triples).unwrap(), None, "{name}");
    let c = extract_full_cocycle(rep).unwrap();
    assert_eq!(c.len(), rep.order() * rep.order());
    assert!(c.entries().iter().all(|e| e.omega.is_unit_modulus()), "{name}");
}

fn check_adjoint<E: Label>(rep: &Rep<E>, name: &str) {
    for g in rep.elements() {
        let gi = rep.inverse(g);
        let w = cocycle_value(rep, &gi, g).unwrap();
        let rhs = rep.matrix(&gi).mul_scalar(&w.inv().unwrap());
        assert_eq!(rep.matrix(g).dagger(), rhs, "{name}: {g:?}");
    }
}

#[test]
fn nice_bases_are_unitary_error_bases() {
    for d in 2..=8 {
        let p = pauli_rep(d).unwrap();
        assert!(verify_nice(&p, PairPlan::All).unwrap().valid);
        assert!(verify_ueb(d, &p.members()).unwrap().valid, "pauli {d}");
        let h = heisenberg_nice_rep(d as u32).unwrap();
        assert!(verify_nice(&h, PairPlan::All).unwrap().valid);
        assert!(verify_ueb(d, &h.members()).unwrap().valid, "heisenberg {d}");
    }
}

#[test]
fn cocycle_identity() {
    for d in 2..=8 {
        check_cocycle(&pauli_rep(d).unwrap(), &format!("pauli {d}"));
        check_cocycle(&heisenberg_nice_rep(d as u32).unwrap(), &format!("heisenberg {d}"));
    }
}

#[test]
fn adjoint_is_a_rescaled_inverse() {
    for d in 2..=8 {
        check_adjoint(&pauli_rep(d).unwrap(), &format!("pauli {d}"));
        check_adjoint(&heisenberg_nice_rep(d as u32).unwrap(), &format!("heisenberg {d}"));
    }
}

#[test]
fn pauli_cocycle_values() {
    // X^i Z^j X^k Z^l = w^(-jk) X^(i+k) Z^(j+l).
    let d = 5u32;
    let rep = pauli_rep(d as usize).unwrap();
    for &(g, h) in &[((1, 2), (3, 4)), ((0, 1), (1, 0)), ((4, 4), (4, 4))] {
        let jk = (g.1 * h.0) as i64;
        assert_eq!(cocycle_value(&rep, &g, &h).unwrap(), PhasedScalar::zeta(d, -jk));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn det_normalize_keeps_niceness(d in 2usize..=5, phases in prop::collection::vec(0i64..12, 36)) {
        let base = pauli_rep(d).unwrap();
        let order = base.elements().to_vec();
        // The identity keeps its member, since niceness asks for exactly I there.
        let twisted = base.rescaled(move |g| match order.iter().position(|e| e == g).unwrap() {
            0 => PhasedScalar::one(),
            i => PhasedScalar::zeta(12, phases[i % phases.len()]),
        });
        let before = verify_nice(&twisted, PairPlan::All).unwrap();
        prop_assert!(before.valid);
        let normalized = det_normalize(&twisted).unwrap();
        let after = verify_nice(&normalized, PairPlan::All).unwrap();
        prop_assert_eq!(before.valid, after.valid);
        for g in twisted.elements() {
            let c = normalized.matrix(g).ratio(&twisted.matrix(g));
            prop_assert!(c.is_some_and(|c| c.is_unit_modulus()));
            prop_assert!(normalized.matrix(g).determinant().unwrap().is_one());
        }
    }
}

use proptest::prelude::*;
use ueb_core::{Cyclotomic, ExactMatrix, PhasedScalar, Rational};

const ORDERS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15];

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn cyclotomic_of(order: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..order as i64, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        let rs: Vec<(i64, Rational)> = terms.into_iter().map(|(k, n, d)| (k, rational(n, d))).collect();
        Cyclotomic::from_terms(order, rs.iter().map(|(k, r)| (*k, r)))
    })
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::sample::select(ORDERS).prop_flat_map(cyclotomic_of)
}

fn root_of_unity() -> impl Strategy<Value = (u32, i64)> {
    prop::sample::select(ORDERS).prop_flat_map(|n| (Just(n), 0..n as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_is_idempotent(a in cyclotomic()) {
        let again = Cyclotomic::from_terms(a.order(), a.coeffs().iter().map(|(k, r)| (*k as i64, r)));
        prop_assert_eq!(again.coeffs(), a.coeffs());
        prop_assert_eq!(again, a);
    }

    #[test]
    fn ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_and_norm(a in cyclotomic()) {
        let norm = a.mul(&a.conj());
        prop_assert_eq!(norm.conj(), norm.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn order_of_roots_of_unity((n, k) in root_of_unity(), sign in prop::bool::ANY) {
        let mut z = Cyclotomic::zeta_pow(n, k);
        if sign {
            z = z.neg();
        }
        let m = z.multiplicative_order().expect("a root of unity");
        prop_assert!(z.pow(m).is_one());
        for q in 1..m {
            if m % q == 0 {
                prop_assert!(!z.pow(q).is_one(), "order {} but a^{} = 1", m, q);
            }
        }
    }

    #[test]
    fn promotion_is_consistent(a in cyclotomic(), b in cyclotomic(), m in 1u32..=4) {
        let big = a.order() * b.order() * m;
        let (pa, pb) = (a.promote(big), b.promote(big));
        prop_assert_eq!(pa.is_zero(), a.is_zero());
        prop_assert_eq!(pa.add(&pb), a.add(&b));
        prop_assert_eq!(pa.mul(&pb), a.mul(&b));
        prop_assert_eq!(pa.mul(&pb).promote(big * 2), a.mul(&b));
    }

    #[test]
    fn scalar_json_round_trip(a in cyclotomic(), e in -3i64..=3) {
        let t = PhasedScalar::symbol("t").powi(e).unwrap();
        let s = PhasedScalar::from(a).mul(&t).add(&PhasedScalar::zeta(3, 1));
        let back: PhasedScalar = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn matrix_json_round_trip(entries in prop::collection::vec(cyclotomic(), 4), den in 1i64..=5) {
        let m = ExactMatrix::new(2, 2, entries.into_iter().map(PhasedScalar::from).collect(), rational(1, den)).unwrap();
        let back: ExactMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn sums_of_all_roots_vanish() {
    for &n in ORDERS.iter().filter(|&&n| n > 1) {
        let total = (0..n as i64).fold(Cyclotomic::zero(n), |acc, k| acc.add(&Cyclotomic::zeta_pow(n, k)));
        assert!(total.is_zero(), "n = {n}");
    }
}

#[test]
fn equality_across_orders() {
    assert_eq!(Cyclotomic::zeta_pow(4, 2), Cyclotomic::from_i64(1, -1));
    assert_eq!(Cyclotomic::zeta_pow(12, 4), Cyclotomic::zeta_pow(3, 1));
    assert_ne!(Cyclotomic::zeta_pow(12, 1), Cyclotomic::zeta_pow(3, 1));
}

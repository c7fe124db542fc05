use std::sync::Arc;

use num_traits::One;
use ueb_core::groups::{Cyclic, Semidirect};
use ueb_core::nice::Label;
use ueb_core::{
    induce_character, induce_representation, ExactMatrix, FiniteGroup, Heisenberg, HeisenbergElement, PhasedScalar,
    Rational,
};

/// Checks every induction invariant for a one-dimensional `psi` on `k`.
fn check<G>(g: &G, k: &[G::Elem], psi: impl Fn(&G::Elem) -> PhasedScalar + Sync + Copy, name: &str)
where
    G: FiniteGroup,
    G::Elem: Label,
{
    let chi = induce_character(g, k, psi).unwrap();
    assert!(chi.is_class_function(g), "{name}: not a class function");
    let index = g.order() as usize / k.len();
    assert_eq!(chi.get(&g.identity()).unwrap(), &PhasedScalar::from_i64(index as i64), "{name}: degree");

    let rep = induce_representation(g, k, 1, |x| ExactMatrix::diag(vec![psi(x)])).unwrap();
    assert_eq!(rep.index(), index);
    assert_eq!(rep.character().unwrap(), chi, "{name}: character differs from trace");
    assert!(rep.is_block_monomial(), "{name}");
    let bound = Rational::one() - Rational::new(1.into(), (index as i64).into());
    let s = rep.sparsity();
    assert!(s.min_zero_fraction >= bound, "{name}: sparsity {} below {}", s.min_zero_fraction, bound);

    // Induced matrices multiply like the group.
    for a in g.generators() {
        for b in g.elements().step_by(3) {
            let ab = rep.matrices[&a].matmul(&rep.matrices[&b]).unwrap();
            assert_eq!(ab, rep.matrices[&g.compose(&a, &b)], "{name}: not a homomorphism");
        }
    }
}

fn zeta_z(k: i64) -> impl Fn(&HeisenbergElement) -> PhasedScalar + Sync + Copy {
    move |g| PhasedScalar::zeta(g.d, k * g.z as i64)
}

#[test]
fn heisenberg_inductions() {
    for p in [3u32, 5] {
        let h = Heisenberg::new(p);
        for k in 0..p as i64 {
            check(&h, &h.center(), zeta_z(k), &format!("H_{p} center, k = {k}"));
        }
        let abelian: Vec<HeisenbergElement> = h.elements().filter(|g| g.x == 0).collect();
        check(&h, &abelian, zeta_z(1), &format!("H_{p} from x = 0"));
        let y_only: Vec<HeisenbergElement> = h.elements().filter(|g| g.x == 0 && g.z == 0).collect();
        check(&h, &y_only, |_| PhasedScalar::one(), &format!("H_{p} from <(0,1,0)>"));
    }
    let h3 = Heisenberg::new(3);
    check(&h3, &[h3.identity()], |_| PhasedScalar::one(), "H_3 regular");
}

#[test]
fn semidirect_inductions() {
    // Z_4 x| Z_4 with the generator acting by inversion.
    let g = Semidirect::new(
        Cyclic { n: 4 },
        Cyclic { n: 4 },
        Arc::new(|h: &u32, n: &u32| if h % 2 == 0 { *n } else { (4 - n) % 4 }),
    );
    let normal: Vec<(u32, u32)> = (0..4).map(|n| (n, 0)).collect();
    for k in 0..4 {
        check(&g, &normal, move |e: &(u32, u32)| PhasedScalar::zeta(4, k * e.0 as i64), &format!("Z4 x| Z4, k = {k}"));
    }
    let other: Vec<(u32, u32)> = (0..4).map(|h| (0, h)).collect();
    check(&g, &other, |e: &(u32, u32)| PhasedScalar::zeta(4, e.1 as i64), "Z4 x| Z4 from the complement");
}

#[test]
fn h3_center_character_values() {
    let h = Heisenberg::new(3);
    let chi = induce_character(&h, &h.center(), zeta_z(1)).unwrap();
    for (g, v) in &chi.values {
        let want = if g.x == 0 && g.y == 0 {
            PhasedScalar::zeta(3, g.z as i64).mul(&PhasedScalar::from_i64(9))
        } else {
            PhasedScalar::zero()
        };
        assert_eq!(v, &want, "{g:?}");
    }
}

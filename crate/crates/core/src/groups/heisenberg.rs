//! The Heisenberg group `H_d` on triples over `Z_d` and its automorphisms.

use serde::{Deserialize, Serialize};

use super::sl2::SL2Element;
use super::{is_odd_prime, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub d: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl HeisenbergElement {
    pub fn new(d: u32, x: i64, y: i64, z: i64) -> HeisenbergElement {
        let m = |v: i64| v.rem_euclid(d as i64) as u32;
        HeisenbergElement { d, x: m(x), y: m(y), z: m(z) }
    }

    pub fn coords(&self) -> (u32, u32, u32) {
        (self.x, self.y, self.z)
    }

    pub fn is_central(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Position in the ascending enumeration.
    pub fn index(&self) -> usize {
        let d = self.d as usize;
        (self.x as usize * d + self.y as usize) * d + self.z as usize
    }
}

/// `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.
pub fn heisenberg_compose(g: &HeisenbergElement, h: &HeisenbergElement) -> Result<HeisenbergElement> {
    if g.d != h.d {
        return Err(Error::Invalid(format!("moduli {} and {} differ", g.d, h.d)));
    }
    Ok(compose(g, h))
}

#[inline]
fn compose(g: &HeisenbergElement, h: &HeisenbergElement) -> HeisenbergElement {
    let d = g.d as u64;
    HeisenbergElement {
        d: g.d,
        x: ((g.x as u64 + h.x as u64) % d) as u32,
        y: ((g.y as u64 + h.y as u64) % d) as u32,
        z: ((g.z as u64 + h.z as u64 + g.x as u64 * h.y as u64) % d) as u32,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Heisenberg {
    pub d: u32,
}

impl Heisenberg {
    pub fn new(d: u32) -> Heisenberg {
        assert!(d >= 1, "Heisenberg modulus must be positive");
        Heisenberg { d }
    }

    pub fn elem(&self, x: i64, y: i64, z: i64) -> HeisenbergElement {
        HeisenbergElement::new(self.d, x, y, z)
    }

    pub fn from_index(&self, i: usize) -> HeisenbergElement {
        let d = self.d as usize;
        HeisenbergElement { d: self.d, x: (i / (d * d)) as u32, y: (i / d % d) as u32, z: (i % d) as u32 }
    }
}

impl FiniteGroup for Heisenberg {
    type Elem = HeisenbergElement;

    fn identity(&self) -> HeisenbergElement {
        self.elem(0, 0, 0)
    }

    fn compose(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        compose(a, b)
    }

    fn inverse(&self, a: &HeisenbergElement) -> HeisenbergElement {
        let (x, y, z) = (a.x as i64, a.y as i64, a.z as i64);
        self.elem(-x, -y, -z + x * y)
    }

    fn order(&self) -> u64 {
        (self.d as u64).pow(3)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = HeisenbergElement> + '_> {
        Box::new((0..self.order() as usize).map(|i| self.from_index(i)))
    }

    fn generators(&self) -> Vec<HeisenbergElement> {
        vec![self.elem(1, 0, 0), self.elem(0, 1, 0)]
    }

    fn pow(&self, a: &HeisenbergElement, n: u64) -> HeisenbergElement {
        let (x, y, z) = (a.x as u128, a.y as u128, a.z as u128);
        let n = n as u128;
        let d = self.d as u128;
        let tri = (n * n.saturating_sub(1) / 2) % d;
        HeisenbergElement {
            d: self.d,
            x: (x * n % d) as u32,
            y: (y * n % d) as u32,
            z: ((z * n + x * y % d * tri) % d) as u32,
        }
    }

    fn center(&self) -> Vec<HeisenbergElement> {
        (0..self.d as i64).map(|z| self.elem(0, 0, z)).collect()
    }

    fn center_transversal(&self) -> Vec<HeisenbergElement> {
        let d = self.d as i64;
        (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).map(|(x, y)| self.elem(x, y, 0)).collect()
    }
}

fn require_odd_prime(p: u32) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("modulus {p} is not an odd prime")))
    }
}

/// `alpha(x, y, z) = (-y, x, z - x y)`.
pub fn alpha_aut(g: &HeisenbergElement) -> Result<HeisenbergElement> {
    require_odd_prime(g.d)?;
    let (x, y, z) = (g.x as i64, g.y as i64, g.z as i64);
    Ok(HeisenbergElement::new(g.d, -y, x, z - x * y))
}

/// `beta(x, y, z) = (x, x + y, z + ((p + 1) / 2) x^2)`.
pub fn beta_aut(g: &HeisenbergElement) -> Result<HeisenbergElement> {
    require_odd_prime(g.d)?;
    let p = g.d as i64;
    let (x, y, z) = (g.x as i64, g.y as i64, g.z as i64);
    Ok(HeisenbergElement::new(g.d, x, x + y, z + (p + 1) / 2 * x * x))
}

/// An automorphism of `H_d`, determined by the images of `(1,0,0)` and `(0,1,0)`.
///
/// Every element factors as `(x, y, z) = (0,0,1)^z (0,1,0)^y (1,0,0)^x`, and
/// `(0,0,1)` is the commutator of the two generators, so the images of the
/// generators fix everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergAut {
    pub d: u32,
    pub img_x: HeisenbergElement,
    pub img_y: HeisenbergElement,
}

impl HeisenbergAut {
    pub fn from_images(img_x: HeisenbergElement, img_y: HeisenbergElement) -> HeisenbergAut {
        assert_eq!(img_x.d, img_y.d);
        HeisenbergAut { d: img_x.d, img_x, img_y }
    }

    pub fn identity(d: u32) -> HeisenbergAut {
        let h = Heisenberg::new(d);
        HeisenbergAut::from_images(h.elem(1, 0, 0), h.elem(0, 1, 0))
    }

    pub fn alpha(p: u32) -> Result<HeisenbergAut> {
        let h = Heisenberg::new(p);
        Ok(HeisenbergAut::from_images(alpha_aut(&h.elem(1, 0, 0))?, alpha_aut(&h.elem(0, 1, 0))?))
    }

    pub fn beta(p: u32) -> Result<HeisenbergAut> {
        let h = Heisenberg::new(p);
        Ok(HeisenbergAut::from_images(beta_aut(&h.elem(1, 0, 0))?, beta_aut(&h.elem(0, 1, 0))?))
    }

    fn group(&self) -> Heisenberg {
        Heisenberg::new(self.d)
    }

    pub fn apply(&self, g: &HeisenbergElement) -> HeisenbergElement {
        let h = self.group();
        let (a, b) = (self.img_x, self.img_y);
        // [a, b] = a b a^-1 b^-1
        let c = h.compose(&h.compose(&h.compose(&a, &b), &h.inverse(&a)), &h.inverse(&b));
        let zc = h.pow(&c, g.z as u64);
        let yb = h.pow(&b, g.y as u64);
        let xa = h.pow(&a, g.x as u64);
        h.compose(&h.compose(&zc, &yb), &xa)
    }

    /// `self` after `other`.
    pub fn after(&self, other: &HeisenbergAut) -> HeisenbergAut {
        HeisenbergAut::from_images(self.apply(&other.img_x), self.apply(&other.img_y))
    }

    pub fn pow(&self, n: u64) -> HeisenbergAut {
        (0..n).fold(HeisenbergAut::identity(self.d), |acc, _| self.after(&acc))
    }

    pub fn is_identity(&self) -> bool {
        *self == HeisenbergAut::identity(self.d)
    }

    /// Action on `(x, y)` as a 2x2 matrix whose columns are the images of
    /// `e_1` and `e_2`.
    pub fn linear_part(&self) -> SL2Element {
        SL2Element::new_unchecked(
            self.d,
            self.img_x.x as i64,
            self.img_y.x as i64,
            self.img_x.y as i64,
            self.img_y.y as i64,
        )
    }

    /// Full lookup table indexed by [`HeisenbergElement::index`].
    pub fn table(&self) -> Vec<HeisenbergElement> {
        let h = self.group();
        h.elements().map(|g| self.apply(&g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{check_axioms, is_automorphism};

    #[test]
    fn composition_rule() {
        let h = Heisenberg::new(3);
        assert_eq!(h.compose(&h.elem(1, 0, 0), &h.elem(0, 1, 0)), h.elem(1, 1, 1));
        assert_eq!(h.compose(&h.elem(0, 1, 0), &h.elem(1, 0, 0)), h.elem(1, 1, 0));
        let g = h.elem(2, 1, 2);
        assert_eq!(h.compose(&g, &h.identity()), g);
        assert!(heisenberg_compose(&g, &Heisenberg::new(5).identity()).is_err());
    }

    #[test]
    fn axioms_small() {
        check_axioms(&Heisenberg::new(3)).unwrap();
        check_axioms(&Heisenberg::new(4)).unwrap();
    }

    #[test]
    fn closed_form_power_matches_repeated_product() {
        let h = Heisenberg::new(6);
        for g in h.elements() {
            let mut acc = h.identity();
            for n in 0..8u64 {
                assert_eq!(h.pow(&g, n), acc);
                acc = h.compose(&acc, &g);
            }
        }
    }

    #[test]
    fn alpha_beta_images() {
        let h = Heisenberg::new(5);
        assert_eq!(alpha_aut(&h.elem(1, 0, 0)).unwrap(), h.elem(0, 1, 0));
        assert_eq!(beta_aut(&h.elem(1, 0, 0)).unwrap(), h.elem(1, 1, 3));
        assert_eq!(alpha_aut(&h.elem(0, 0, 1)).unwrap(), h.elem(0, 0, 1));
        assert!(alpha_aut(&Heisenberg::new(4).elem(1, 0, 0)).is_err());
        assert!(beta_aut(&Heisenberg::new(9).elem(1, 0, 0)).is_err());
    }

    #[test]
    fn generator_images_reproduce_formulas() {
        for p in [3u32, 5, 7] {
            let h = Heisenberg::new(p);
            let (a, b) = (HeisenbergAut::alpha(p).unwrap(), HeisenbergAut::beta(p).unwrap());
            for g in h.elements() {
                assert_eq!(a.apply(&g), alpha_aut(&g).unwrap());
                assert_eq!(b.apply(&g), beta_aut(&g).unwrap());
            }
        }
    }

    #[test]
    fn alpha_is_automorphism_of_h5() {
        let h = Heisenberg::new(5);
        assert!(is_automorphism(&h, |g| alpha_aut(g).unwrap()));
        assert!(is_automorphism(&h, |g| beta_aut(g).unwrap()));
        let h3 = Heisenberg::new(3);
        assert!(!is_automorphism(&h3, |_| h3.identity()));
    }

    #[test]
    fn linear_parts() {
        let a = HeisenbergAut::alpha(5).unwrap().linear_part();
        assert_eq!((a.a, a.b, a.c, a.d), (0, 4, 1, 0));
        let b = HeisenbergAut::beta(5).unwrap().linear_part();
        assert_eq!((b.a, b.b, b.c, b.d), (1, 0, 1, 1));
    }
}

//! `SL(2, F_p)` by explicit 2x2 matrices.

use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// `[[a, b], [c, d]]` over `F_p` with determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SL2Element {
    pub p: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl SL2Element {
    pub fn new(p: u32, a: i64, b: i64, c: i64, d: i64) -> Result<SL2Element> {
        let m = SL2Element::new_unchecked(p, a, b, c, d);
        if m.det() != 1 % p {
            return Err(Error::Invalid(format!("determinant of {m:?} is {} mod {p}", m.det())));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(p: u32, a: i64, b: i64, c: i64, d: i64) -> SL2Element {
        let r = |v: i64| v.rem_euclid(p as i64) as u32;
        SL2Element { p, a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    pub fn identity(p: u32) -> SL2Element {
        SL2Element::new_unchecked(p, 1, 0, 0, 1)
    }

    /// `(0, -1; 1, 0)`.
    pub fn alpha(p: u32) -> SL2Element {
        SL2Element::new_unchecked(p, 0, -1, 1, 0)
    }

    /// `(1, 0; 1, 1)`.
    pub fn beta(p: u32) -> SL2Element {
        SL2Element::new_unchecked(p, 1, 0, 1, 1)
    }

    /// The product `beta alpha beta alpha`.
    pub fn gamma(p: u32) -> SL2Element {
        let (a, b) = (SL2Element::alpha(p), SL2Element::beta(p));
        b.mul(&a).mul(&b).mul(&a)
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        ((self.a as u64 * self.d as u64 + p * p - self.b as u64 * self.c as u64 % p) % p) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.a + self.d) % self.p
    }

    pub fn mul(&self, o: &SL2Element) -> SL2Element {
        let p = self.p as u64;
        let f = |x: u32, y: u32, u: u32, v: u32| ((x as u64 * y as u64 + u as u64 * v as u64) % p) as u32;
        SL2Element {
            p: self.p,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    /// Inverse of a determinant-one matrix: `(d, -b; -c, a)`.
    pub fn inv(&self) -> SL2Element {
        SL2Element::new_unchecked(self.p, self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64)
    }

    pub fn pow(&self, n: u64) -> SL2Element {
        (0..n).fold(SL2Element::identity(self.p), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == SL2Element::identity(self.p)
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut cur = *self;
        while !cur.is_identity() {
            cur = cur.mul(self);
            k += 1;
        }
        k
    }

    /// Image of the column vector `(x, y)`.
    pub fn apply(&self, x: u32, y: u32) -> (u32, u32) {
        let p = self.p as u64;
        (
            ((self.a as u64 * x as u64 + self.b as u64 * y as u64) % p) as u32,
            ((self.c as u64 * x as u64 + self.d as u64 * y as u64) % p) as u32,
        )
    }
}

/// True iff no line of `F_p^2` is invariant, i.e. the characteristic
/// polynomial `x^2 - tr(M) x + det(M)` has no root in `F_p`.
pub fn acts_irreducibly(m: &SL2Element) -> bool {
    let p = m.p as u64;
    let (t, det) = (m.trace() as u64, m.det() as u64);
    !(0..p).any(|x| (x * x + p * p - t * x % p + det) % p == 0)
}

/// Every element of exact order `r`.
pub fn sl2_elements_of_order(p: u32, r: u64) -> Vec<SL2Element> {
    let g = SL2 { p };
    g.elements().filter(|m| m.order() == r).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SL2 {
    pub p: u32,
}

impl SL2 {
    pub fn new(p: u32) -> Result<SL2> {
        if !super::is_odd_prime(p) {
            return Err(Error::Invalid(format!("SL(2, F_p) needs an odd prime, got {p}")));
        }
        Ok(SL2 { p })
    }
}

impl FiniteGroup for SL2 {
    type Elem = SL2Element;

    fn identity(&self) -> SL2Element {
        SL2Element::identity(self.p)
    }

    fn compose(&self, a: &SL2Element, b: &SL2Element) -> SL2Element {
        a.mul(b)
    }

    fn inverse(&self, a: &SL2Element) -> SL2Element {
        a.inv()
    }

    fn order(&self) -> u64 {
        let p = self.p as u64;
        (p + 1) * p * (p - 1)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = SL2Element> + '_> {
        let p = self.p;
        Box::new((0..p).flat_map(move |a| {
            (0..p).flat_map(move |b| {
                (0..p).flat_map(move |c| {
                    (0..p)
                        .map(move |d| SL2Element { p, a, b, c, d })
                        .filter(|m| m.det() == 1)
                })
            })
        }))
    }

    fn generators(&self) -> Vec<SL2Element> {
        vec![SL2Element::alpha(self.p), SL2Element::beta(self.p)]
    }

    fn element_order(&self, a: &SL2Element) -> u64 {
        a.order()
    }
}

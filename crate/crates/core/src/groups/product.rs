//! Cyclic groups, direct products and semidirect products.

use std::sync::Arc;

use super::{transversal, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cyclic {
    pub n: u32,
}

impl FiniteGroup for Cyclic {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }
    fn compose(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.n as u64) as u32
    }
    fn inverse(&self, a: &u32) -> u32 {
        (self.n - a) % self.n
    }
    fn order(&self) -> u64 {
        self.n as u64
    }
    fn elements(&self) -> Box<dyn Iterator<Item = u32> + '_> {
        Box::new(0..self.n)
    }
    fn generators(&self) -> Vec<u32> {
        vec![1 % self.n]
    }
    fn center(&self) -> Vec<u32> {
        (0..self.n).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DirectProduct<A, B> {
    pub a: A,
    pub b: B,
}

impl<A: FiniteGroup, B: FiniteGroup> FiniteGroup for DirectProduct<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn identity(&self) -> Self::Elem {
        (self.a.identity(), self.b.identity())
    }
    fn compose(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.a.compose(&x.0, &y.0), self.b.compose(&x.1, &y.1))
    }
    fn inverse(&self, x: &Self::Elem) -> Self::Elem {
        (self.a.inverse(&x.0), self.b.inverse(&x.1))
    }
    fn order(&self) -> u64 {
        self.a.order() * self.b.order()
    }
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        let bs: Vec<B::Elem> = self.b.elements().collect();
        Box::new(self.a.elements().flat_map(move |x| bs.clone().into_iter().map(move |y| (x.clone(), y))))
    }
    fn generators(&self) -> Vec<Self::Elem> {
        let mut g: Vec<Self::Elem> = self.a.generators().into_iter().map(|x| (x, self.b.identity())).collect();
        g.extend(self.b.generators().into_iter().map(|y| (self.a.identity(), y)));
        g
    }
    fn center(&self) -> Vec<Self::Elem> {
        cartesian(&self.a.center(), &self.b.center())
    }
    fn center_transversal(&self) -> Vec<Self::Elem> {
        cartesian(&self.a.center_transversal(), &self.b.center_transversal())
    }
}

fn cartesian<X: Clone, Y: Clone>(xs: &[X], ys: &[Y]) -> Vec<(X, Y)> {
    xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

/// Action of the acting group on the normal subgroup: `phi(h)(n)`.
pub type Action<N, H> =
    Arc<dyn Fn(&<H as FiniteGroup>::Elem, &<N as FiniteGroup>::Elem) -> <N as FiniteGroup>::Elem + Send + Sync>;

/// `N x| H` on pairs `(n, h)` with `(n1, h1)(n2, h2) = (n1 phi(h1)(n2), h1 h2)`.
#[derive(Clone)]
pub struct Semidirect<N: FiniteGroup, H: FiniteGroup> {
    pub n: N,
    pub h: H,
    pub action: Action<N, H>,
}

impl<N: FiniteGroup, H: FiniteGroup> Semidirect<N, H> {
    pub fn new(n: N, h: H, action: Action<N, H>) -> Semidirect<N, H> {
        Semidirect { n, h, action }
    }

    pub fn act(&self, h: &H::Elem, n: &N::Elem) -> N::Elem {
        (self.action)(h, n)
    }

    /// Whether every `phi(h)` for a generator `h` of `H` is an automorphism
    /// of `N` (full pair check; desk scale only).
    pub fn action_is_by_automorphisms(&self) -> bool {
        self.h.generators().iter().all(|h| super::is_automorphism(&self.n, |n| self.act(h, n)))
    }

    /// Whether `phi(k)` acts trivially for every central `k` of `H`.
    pub fn center_acts_trivially(&self) -> bool {
        let ngens = self.n.generators();
        self.h.center().iter().all(|k| ngens.iter().all(|g| self.act(k, g) == *g))
    }

    /// Central elements of `N` fixed by the whole action.
    fn fixed_center_of_n(&self) -> Vec<N::Elem> {
        let hgens = self.h.generators();
        self.n.center().into_iter().filter(|c| hgens.iter().all(|k| self.act(k, c) == *c)).collect()
    }
}

impl<N: FiniteGroup, H: FiniteGroup> FiniteGroup for Semidirect<N, H> {
    type Elem = (N::Elem, H::Elem);

    fn identity(&self) -> Self::Elem {
        (self.n.identity(), self.h.identity())
    }
    fn compose(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.n.compose(&x.0, &self.act(&x.1, &y.0)), self.h.compose(&x.1, &y.1))
    }
    fn inverse(&self, x: &Self::Elem) -> Self::Elem {
        let hinv = self.h.inverse(&x.1);
        (self.act(&hinv, &self.n.inverse(&x.0)), hinv)
    }
    fn order(&self) -> u64 {
        self.n.order() * self.h.order()
    }
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        let hs: Vec<H::Elem> = self.h.elements().collect();
        Box::new(self.n.elements().flat_map(move |x| hs.clone().into_iter().map(move |y| (x.clone(), y))))
    }
    fn generators(&self) -> Vec<Self::Elem> {
        let mut g: Vec<Self::Elem> = self.n.generators().into_iter().map(|x| (x, self.h.identity())).collect();
        g.extend(self.h.generators().into_iter().map(|y| (self.n.identity(), y)));
        g
    }

    /// When the center of `H` acts trivially, `(n, h)` is central iff `h` is
    /// central in `H` and `n` is central in `N` and fixed by the action.
    /// Otherwise falls back to the generator test over all elements.
    fn center(&self) -> Vec<Self::Elem> {
        if self.center_acts_trivially() {
            cartesian(&self.fixed_center_of_n(), &self.h.center())
        } else {
            let gens = self.generators();
            self.elements().filter(|g| gens.iter().all(|s| self.commutes(g, s))).collect()
        }
    }

    /// If the action fixes all of `Z(N)`, the coset of `(n, h)` is
    /// `n Z(N) x h Z(H)`, so the transversal is a product of transversals.
    fn center_transversal(&self) -> Vec<Self::Elem> {
        if self.center_acts_trivially() && self.fixed_center_of_n().len() == self.n.center().len() {
            cartesian(&self.n.center_transversal(), &self.h.center_transversal())
        } else {
            let z = self.center();
            transversal(self, &z).expect("the center is a subgroup")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{check_axioms, is_central, Heisenberg};

    fn z4_by_z4() -> Semidirect<Cyclic, Cyclic> {
        // k acts on Z_4 by multiplication with (-1)^k.
        Semidirect::new(
            Cyclic { n: 4 },
            Cyclic { n: 4 },
            Arc::new(|k: &u32, n: &u32| if k % 2 == 0 { *n } else { (4 - n) % 4 }),
        )
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let (a, b) = (Heisenberg::new(3), Cyclic { n: 4 });
        let s = Semidirect::new(a, b, Arc::new(|_: &u32, n: &_| *n));
        let d = DirectProduct { a, b };
        let elems: Vec<_> = d.elements().collect();
        for x in elems.iter().step_by(7) {
            for y in elems.iter().step_by(5) {
                assert_eq!(s.compose(x, y), d.compose(x, y));
            }
        }
        assert_eq!(s.center(), d.center());
    }

    #[test]
    fn nonabelian_semidirect() {
        let g = z4_by_z4();
        check_axioms(&g).unwrap();
        assert!(g.action_is_by_automorphisms());
        let generic: Vec<_> = {
            let gens = g.generators();
            g.elements().filter(|x| gens.iter().all(|s| g.commutes(x, s))).collect()
        };
        assert_eq!(g.center(), generic);
        assert!(is_central(&g, &g.center()));
        assert_eq!(g.center_transversal().len() as u64, g.order() / g.center().len() as u64);
    }

    #[test]
    fn direct_product_center() {
        let d = DirectProduct { a: Heisenberg::new(3), b: Heisenberg::new(5) };
        assert_eq!(d.order(), 27 * 125);
        assert_eq!(d.center().len(), 15);
        assert_eq!(d.center_transversal().len(), 9 * 25);
    }
}

//! A small finite-group engine.
//!
//! Groups are described by their composition law rather than by tables, so a
//! group with millions of elements can still be streamed. Element enumeration
//! is always in ascending order of the element type, which makes "least
//! representative" choices deterministic.

mod heisenberg;
mod product;
mod sl2;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

pub use heisenberg::{alpha_aut, beta_aut, heisenberg_compose, Heisenberg, HeisenbergAut, HeisenbergElement};
pub use product::{Cyclic, DirectProduct, Semidirect};
pub use sl2::{acts_irreducibly, sl2_elements_of_order, SL2Element, SL2};

use crate::error::{Error, Result};

pub trait FiniteGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn order(&self) -> u64;
    /// All elements in ascending order.
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_>;
    fn generators(&self) -> Vec<Self::Elem>;

    fn pow(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.compose(&base, &base);
            }
        }
        acc
    }

    fn element_order(&self, a: &Self::Elem) -> u64 {
        let e = self.identity();
        let mut cur = a.clone();
        let mut k = 1;
        while cur != e {
            cur = self.compose(&cur, a);
            k += 1;
        }
        k
    }

    /// Elements commuting with every generator, which is the center.
    fn center(&self) -> Vec<Self::Elem> {
        let gens = self.generators();
        self.elements()
            .filter(|g| gens.iter().all(|s| self.compose(g, s) == self.compose(s, g)))
            .collect()
    }

    /// A transversal of the center: the least element of every coset.
    fn center_transversal(&self) -> Vec<Self::Elem> {
        let z = self.center();
        transversal(self, &z).expect("the center is a subgroup")
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.compose(a, b) == self.compose(b, a)
    }
}

/// Which group axiom failed, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure<E> {
    NotClosed(E, E),
    Identity(E),
    Inverse(E),
    Associativity(E, E, E),
    OrderMismatch { claimed: u64, enumerated: u64 },
}

/// Checks closure, identity, inverses and associativity by enumeration.
pub fn check_axioms<G: FiniteGroup + ?Sized>(g: &G) -> std::result::Result<(), AxiomFailure<G::Elem>> {
    let elems: Vec<G::Elem> = g.elements().collect();
    if elems.len() as u64 != g.order() {
        return Err(AxiomFailure::OrderMismatch { claimed: g.order(), enumerated: elems.len() as u64 });
    }
    let set: HashSet<&G::Elem> = elems.iter().collect();
    let e = g.identity();
    for a in &elems {
        if g.compose(&e, a) != *a || g.compose(a, &e) != *a {
            return Err(AxiomFailure::Identity(a.clone()));
        }
        let inv = g.inverse(a);
        if g.compose(a, &inv) != e || g.compose(&inv, a) != e {
            return Err(AxiomFailure::Inverse(a.clone()));
        }
    }
    for a in &elems {
        for b in &elems {
            let ab = g.compose(a, b);
            if !set.contains(&ab) {
                return Err(AxiomFailure::NotClosed(a.clone(), b.clone()));
            }
            for c in &elems {
                if g.compose(&ab, c) != g.compose(a, &g.compose(b, c)) {
                    return Err(AxiomFailure::Associativity(a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    Ok(())
}

/// Bijectivity plus `f(gh) = f(g) f(h)` over all pairs.
pub fn is_automorphism<G, F>(g: &G, f: F) -> bool
where
    G: FiniteGroup + ?Sized,
    F: Fn(&G::Elem) -> G::Elem + Sync,
{
    use rayon::prelude::*;
    let elems: Vec<G::Elem> = g.elements().collect();
    let images: HashMap<&G::Elem, G::Elem> = elems.iter().map(|a| (a, f(a))).collect();
    let distinct: HashSet<&G::Elem> = images.values().collect();
    if distinct.len() != elems.len() {
        return false;
    }
    elems.par_iter().all(|a| {
        let fa = &images[a];
        elems.iter().all(|b| images[&g.compose(a, b)] == g.compose(fa, &images[b]))
    })
}

/// Contains the identity and is closed under products and inverses.
pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, subset: &[G::Elem]) -> bool {
    let set: HashSet<&G::Elem> = subset.iter().collect();
    if !set.contains(&g.identity()) {
        return false;
    }
    subset.iter().all(|a| set.contains(&g.inverse(a)) && subset.iter().all(|b| set.contains(&g.compose(a, b))))
}

/// One representative per left coset `gK`, the least element of each coset,
/// with the identity first.
pub fn transversal<G: FiniteGroup + ?Sized>(g: &G, subgroup: &[G::Elem]) -> Result<Vec<G::Elem>> {
    if !is_subgroup(g, subgroup) {
        return Err(Error::Invalid("transversal needs a subgroup".into()));
    }
    let index = g.order() / subgroup.len() as u64;
    let mut covered: HashSet<G::Elem> = HashSet::new();
    let mut reps = Vec::with_capacity(index as usize);
    for a in g.elements() {
        if covered.contains(&a) {
            continue;
        }
        for k in subgroup {
            covered.insert(g.compose(&a, k));
        }
        reps.push(a);
    }
    let e = g.identity();
    if let Some(pos) = reps.iter().position(|r| *r == e) {
        let id = reps.remove(pos);
        reps.insert(0, id);
    }
    debug_assert_eq!(reps.len() as u64, index);
    Ok(reps)
}

/// Conjugacy classes by orbit enumeration, each sorted, ordered by least element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Vec<G::Elem>> {
    let elems: Vec<G::Elem> = g.elements().collect();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut classes = Vec::new();
    for a in &elems {
        if seen.contains(a) {
            continue;
        }
        let class: BTreeSet<G::Elem> =
            elems.iter().map(|h| g.compose(&g.compose(h, a), &g.inverse(h))).collect();
        seen.extend(class.iter().cloned());
        classes.push(class.into_iter().collect());
    }
    classes
}

/// Whether `z` is a subset of the center.
pub fn is_central<G: FiniteGroup + ?Sized>(g: &G, z: &[G::Elem]) -> bool {
    let gens = g.generators();
    z.iter().all(|c| gens.iter().all(|s| g.commutes(c, s)))
}

/// A parsed group descriptor such as `heisenberg:5`, `sl2:11`, `g165` or `g:5,11,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Heisenberg(u32),
    SL2(u32),
    Triple { p: u32, q: u32, r: u32 },
}

impl std::str::FromStr for GroupDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupDescriptor> {
        let bad = || Error::Parse(format!("unknown group descriptor {s:?}"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        if s == "g165" {
            return Ok(GroupDescriptor::Triple { p: 5, q: 11, r: 3 });
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let desc = match kind {
            "heisenberg" => {
                let d = num(arg)?;
                if d < 2 {
                    return Err(Error::Invalid("Heisenberg modulus must be at least 2".into()));
                }
                GroupDescriptor::Heisenberg(d)
            }
            "sl2" => {
                let p = num(arg)?;
                if !is_odd_prime(p) {
                    return Err(Error::Invalid(format!("sl2 needs an odd prime, got {p}")));
                }
                GroupDescriptor::SL2(p)
            }
            "g" => {
                let parts: Vec<u32> = arg.split(',').map(num).collect::<Result<_>>()?;
                let [p, q, r] = parts[..] else { return Err(bad()) };
                validate_triple(p, q, r)?;
                GroupDescriptor::Triple { p, q, r }
            }
            _ => return Err(bad()),
        };
        Ok(desc)
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDescriptor::Heisenberg(d) => write!(f, "heisenberg:{d}"),
            GroupDescriptor::SL2(p) => write!(f, "sl2:{p}"),
            GroupDescriptor::Triple { p, q, r } => write!(f, "g:{p},{q},{r}"),
        }
    }
}

/// Distinct odd primes with `r | p + 1` and `r | q + 1`.
pub fn validate_triple(p: u32, q: u32, r: u32) -> Result<()> {
    for v in [p, q, r] {
        if !is_odd_prime(v) {
            return Err(Error::Invalid(format!("{v} is not an odd prime")));
        }
    }
    if p == q || p == r || q == r {
        return Err(Error::Invalid("primes must be distinct".into()));
    }
    if (p + 1) % r != 0 || (q + 1) % r != 0 {
        return Err(Error::Invalid(format!("{r} must divide both {} and {}", p + 1, q + 1)));
    }
    Ok(())
}

pub fn is_odd_prime(n: u32) -> bool {
    n >= 3 && n % 2 == 1 && (3..).step_by(2).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

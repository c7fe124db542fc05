//! Induced characters and induced representations of small finite groups.
//!
//! Cosets `tK` are ordered by their least element, identity coset first, so
//! induced matrices are fixed up to that convention.

use std::collections::{BTreeMap, HashSet};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{PhasedScalar, Rational};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::groups::{conjugacy_classes, is_subgroup, transversal, FiniteGroup};
use crate::nice::Label;

/// A function on group elements, stored for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction<E: Ord> {
    pub values: BTreeMap<E, PhasedScalar>,
}

impl<E: Label> ClassFunction<E> {
    pub fn get(&self, e: &E) -> Option<&PhasedScalar> {
        self.values.get(e)
    }

    /// Whether the values are constant on every conjugacy class.
    pub fn is_class_function<G: FiniteGroup<Elem = E>>(&self, g: &G) -> bool {
        conjugacy_classes(g).iter().all(|class| {
            let first = self.values.get(&class[0]);
            class.iter().all(|x| self.values.get(x) == first)
        })
    }
}

fn require_subgroup<G: FiniteGroup>(g: &G, k: &[G::Elem]) -> Result<()> {
    if is_subgroup(g, k) {
        Ok(())
    } else {
        Err(Error::Invalid("the given subset is not a subgroup".into()))
    }
}

/// `chi(x) = (1/|K|) sum_{h in G} psi(h x h^-1)`, with `psi` zero off `K`.
pub fn induce_character<G, F>(g: &G, k: &[G::Elem], psi: F) -> Result<ClassFunction<G::Elem>>
where
    G: FiniteGroup,
    G::Elem: Label,
    F: Fn(&G::Elem) -> PhasedScalar + Sync,
{
    require_subgroup(g, k)?;
    let ks: HashSet<&G::Elem> = k.iter().collect();
    let elems: Vec<G::Elem> = g.elements().collect();
    let inv: Vec<G::Elem> = elems.iter().map(|h| g.inverse(h)).collect();
    let norm = Rational::new(1.into(), (k.len() as i64).into());
    let values = elems
        .par_iter()
        .map(|x| {
            let mut acc = PhasedScalar::zero();
            for (h, hi) in elems.iter().zip(&inv) {
                let c = g.compose(&g.compose(h, x), hi);
                if ks.contains(&c) {
                    acc = acc.add(&psi(&c));
                }
            }
            (x.clone(), acc.scale_rational(&norm))
        })
        .collect();
    Ok(ClassFunction { values })
}

/// A representation induced from a subgroup, as block-monomial matrices.
#[derive(Clone, Debug)]
pub struct InducedRep<E: Ord> {
    pub subgroup: Vec<E>,
    /// Coset representatives, identity first.
    pub transversal: Vec<E>,
    pub degree: usize,
    pub matrices: BTreeMap<E, ExactMatrix>,
}

/// Induces the matrix representation `psi` of `K` (of degree `degree`) to `G`.
/// Block `(i, j)` of the image of `x` is `psi(t_i^-1 x t_j)` when that lies
/// in `K`, and zero otherwise.
pub fn induce_representation<G, F>(g: &G, k: &[G::Elem], degree: usize, psi: F) -> Result<InducedRep<G::Elem>>
where
    G: FiniteGroup,
    G::Elem: Label,
    F: Fn(&G::Elem) -> ExactMatrix + Sync,
{
    let ts = transversal(g, k)?;
    let ks: HashSet<&G::Elem> = k.iter().collect();
    let n = ts.len();
    let tinv: Vec<G::Elem> = ts.iter().map(|t| g.inverse(t)).collect();
    let elems: Vec<G::Elem> = g.elements().collect();
    let matrices = elems
        .par_iter()
        .map(|x| {
            let mut entries = vec![PhasedScalar::zero(); n * degree * n * degree];
            for (j, t) in ts.iter().enumerate() {
                let xt = g.compose(x, t);
                let (i, kk) = tinv
                    .iter()
                    .enumerate()
                    .map(|(i, ti)| (i, g.compose(ti, &xt)))
                    .find(|(_, c)| ks.contains(c))
                    .expect("every element lies in some coset");
                let block = psi(&kk);
                if block.rows() != degree || block.cols() != degree {
                    return Err(Error::Dimension(format!("psi has degree {}, expected {degree}", block.rows())));
                }
                for a in 0..degree {
                    for b in 0..degree {
                        entries[(i * degree + a) * n * degree + j * degree + b] = block.value(a, b);
                    }
                }
            }
            Ok((x.clone(), ExactMatrix::from_entries(n * degree, n * degree, entries)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(InducedRep { subgroup: k.to_vec(), transversal: ts, degree, matrices })
}

impl<E: Label> InducedRep<E> {
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn dim(&self) -> usize {
        self.index() * self.degree
    }

    /// For every matrix and every block column, exactly one block row is nonzero.
    pub fn is_block_monomial(&self) -> bool {
        let (n, d) = (self.index(), self.degree);
        self.matrices.values().all(|m| {
            (0..n).all(|j| {
                let nonzero_blocks = (0..n)
                    .filter(|&i| (0..d).any(|a| (0..d).any(|b| !m.entry(i * d + a, j * d + b).is_zero())))
                    .count();
                nonzero_blocks == 1
            })
        })
    }

    /// The trace of every matrix, as a class function.
    pub fn character(&self) -> Result<ClassFunction<E>> {
        let values = self.matrices.iter().map(|(x, m)| Ok((x.clone(), m.trace()?))).collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }

    pub fn sparsity(&self) -> SparsityReport {
        let ms: Vec<ExactMatrix> = self.matrices.values().cloned().collect();
        let min = sparsity_check(&ms);
        let bound = Rational::one() - Rational::new(1.into(), (self.index() as i64).into());
        SparsityReport { meets_bound: min >= bound, min_zero_fraction: min, bound, index: self.index() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityReport {
    #[serde(serialize_with = "crate::exactmat::ser_rational")]
    pub min_zero_fraction: Rational,
    #[serde(serialize_with = "crate::exactmat::ser_rational")]
    pub bound: Rational,
    pub meets_bound: bool,
    pub index: usize,
}

/// The smallest fraction of zero entries over all matrices (one for an
/// empty list).
pub fn sparsity_check(ms: &[ExactMatrix]) -> Rational {
    ms.iter().map(ExactMatrix::zero_fraction).min().unwrap_or_else(Rational::one)
}

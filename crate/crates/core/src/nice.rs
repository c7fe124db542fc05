//! Nice error bases: projective representations of an index group whose
//! non-identity images are traceless.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::PhasedScalar;
use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, Operator};
use crate::groups::{Cyclic, DirectProduct, FiniteGroup, Heisenberg, HeisenbergElement};

/// Element types usable as group labels.
pub trait Label: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static {}
impl<T: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static> Label for T {}

type BinaryFn<E> = Arc<dyn Fn(&E, &E) -> E + Send + Sync>;
type UnaryFn<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;
type RhoFn<E, M> = Arc<dyn Fn(&E) -> M + Send + Sync>;
type PhaseFn<E> = Arc<dyn Fn(&E, &E) -> Result<PhasedScalar> + Send + Sync>;
type GramFn<E> = Arc<dyn Fn(&E) -> Option<PhasedScalar> + Send + Sync>;

/// A map `rho` from a finite index group to matrices.
///
/// The index group is given by an explicit element list (identity first) and
/// its multiplication. For a quotient `G / Z` the list is a transversal and
/// the multiplication reduces products back onto it.
#[derive(Clone)]
pub struct ProjectiveRep<E, M> {
    dim: usize,
    elements: Arc<Vec<E>>,
    index: Arc<HashMap<E, usize>>,
    generators: Vec<E>,
    compose: BinaryFn<E>,
    inverse: UnaryFn<E>,
    rho: RhoFn<E, M>,
    cocycle: Option<PhaseFn<E>>,
    gram: Option<GramFn<E>>,
}

impl<E: Label, M: Operator + 'static> ProjectiveRep<E, M> {
    /// `elements[0]` is the identity.
    pub fn new(
        dim: usize,
        elements: Vec<E>,
        generators: Vec<E>,
        compose: impl Fn(&E, &E) -> E + Send + Sync + 'static,
        inverse: impl Fn(&E) -> E + Send + Sync + 'static,
        rho: impl Fn(&E) -> M + Send + Sync + 'static,
    ) -> Result<ProjectiveRep<E, M>> {
        if elements.is_empty() {
            return Err(Error::Invalid("index group has no elements".into()));
        }
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Invalid("index group lists an element twice".into()));
        }
        if let Some(g) = generators.iter().find(|g| !index.contains_key(*g)) {
            return Err(Error::Invalid(format!("generator {g:?} is not an element")));
        }
        Ok(ProjectiveRep {
            dim,
            elements: Arc::new(elements),
            index: Arc::new(index),
            generators,
            compose: Arc::new(compose),
            inverse: Arc::new(inverse),
            rho: Arc::new(rho),
            cocycle: None,
            gram: None,
        })
    }

    /// The whole group as index group.
    pub fn from_group<G>(group: G, dim: usize, rho: impl Fn(&E) -> M + Send + Sync + 'static) -> Result<Self>
    where
        G: FiniteGroup<Elem = E> + 'static,
    {
        let mut elements: Vec<E> = group.elements().collect();
        move_to_front(&mut elements, &group.identity());
        let generators = group.generators();
        let g = Arc::new(group);
        let h = g.clone();
        ProjectiveRep::new(dim, elements, generators, move |a, b| g.compose(a, b), move |a| h.inverse(a), rho)
    }

    /// The quotient of `group` by a central subgroup, on `transversal`.
    /// `canon` sends every element to its representative.
    pub fn from_central_quotient<G>(
        group: G,
        transversal: Vec<E>,
        canon: impl Fn(&E) -> E + Send + Sync + 'static,
        dim: usize,
        rho: impl Fn(&E) -> M + Send + Sync + 'static,
    ) -> Result<Self>
    where
        G: FiniteGroup<Elem = E> + 'static,
    {
        let mut elements = transversal;
        let e = group.identity();
        if canon(&e) != e {
            return Err(Error::Invalid("the identity must represent its own coset".into()));
        }
        move_to_front(&mut elements, &e);
        let mut generators: Vec<E> = group.generators().iter().map(&canon).filter(|g| *g != e).collect();
        generators.dedup();
        let canon = Arc::new(canon);
        let (g, h, c) = (Arc::new(group), canon.clone(), canon);
        let g2 = g.clone();
        ProjectiveRep::new(
            dim,
            elements,
            generators,
            move |a, b| h(&g.compose(a, b)),
            move |a| c(&g2.inverse(a)),
            rho,
        )
    }

    /// Replaces the generic ratio of `rho(a) rho(b)` to `rho(ab)` by a
    /// specialised exact computation, e.g. one memoising tensor factors. It
    /// must fail when the quotient is not a scalar.
    pub fn with_cocycle(mut self, f: impl Fn(&E, &E) -> Result<PhasedScalar> + Send + Sync + 'static) -> Self {
        self.cocycle = Some(Arc::new(f));
        self
    }

    /// Replaces the generic Gram scalar of a member.
    pub fn with_gram(mut self, f: impl Fn(&E) -> Option<PhasedScalar> + Send + Sync + 'static) -> Self {
        self.gram = Some(Arc::new(f));
        self
    }

    /// Evaluates every member once and serves later lookups from the table.
    pub fn memoized(self) -> Self {
        let rho = self.rho.clone();
        let table: Vec<M> = self.elements.par_iter().map(|e| rho(e)).collect();
        let index = self.index.clone();
        ProjectiveRep {
            rho: Arc::new(move |e| match index.get(e) {
                Some(&i) => table[i].clone(),
                None => rho(e),
            }),
            ..self
        }
    }

    /// A copy in which the member at `g` is replaced by `m`.
    pub fn with_member(&self, g: &E, m: M) -> Self {
        let (old, g) = (self.rho.clone(), g.clone());
        ProjectiveRep {
            rho: Arc::new(move |e| if *e == g { m.clone() } else { old(e) }),
            cocycle: None,
            gram: None,
            ..self.clone()
        }
    }

    /// Rescales every member by a scalar depending on its label.
    pub fn rescaled(&self, c: impl Fn(&E) -> PhasedScalar + Send + Sync + 'static) -> Self {
        let old = self.rho.clone();
        ProjectiveRep { rho: Arc::new(move |e| old(e).scaled(&c(e))), cocycle: None, gram: None, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn identity(&self) -> &E {
        &self.elements[0]
    }

    pub fn compose(&self, a: &E, b: &E) -> E {
        (self.compose)(a, b)
    }

    pub fn inverse(&self, a: &E) -> E {
        (self.inverse)(a)
    }

    pub fn position(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn matrix(&self, e: &E) -> M {
        (self.rho)(e)
    }

    pub fn members(&self) -> Vec<M> {
        self.elements.iter().map(|e| self.matrix(e)).collect()
    }

    /// `Some(c)` with `rho(g) rho(g)^dagger = c I`.
    pub fn gram(&self, g: &E) -> Option<PhasedScalar> {
        match &self.gram {
            Some(f) => f(g),
            None => self.matrix(g).gram(),
        }
    }
}

fn move_to_front<E: PartialEq>(v: &mut Vec<E>, e: &E) {
    if let Some(pos) = v.iter().position(|x| x == e) {
        let x = v.remove(pos);
        v.insert(0, x);
    }
}

/// The index group `Z_d x Z_d` of the generalised Pauli basis.
pub type PauliIndex = DirectProduct<Cyclic, Cyclic>;

/// `rho(i, j) = X^i Z^j`.
pub fn pauli_rep(d: usize) -> Result<ProjectiveRep<(u32, u32), ExactMatrix>> {
    if d < 2 {
        return Err(Error::Invalid(format!("Pauli basis needs d >= 2, got {d}")));
    }
    let n = d as u32;
    let group = DirectProduct { a: Cyclic { n }, b: Cyclic { n } };
    Ok(ProjectiveRep::from_group(group, d, move |&(i, j)| pauli_member(d, i as usize, j as usize))?.memoized())
}

/// `X^i Z^j`, built directly as a monomial matrix.
pub fn pauli_member(d: usize, i: usize, j: usize) -> ExactMatrix {
    // X^i |k> = |k - i>, and Z^j on the result contributes w^(j (k - i)).
    ExactMatrix::from_fn(d, d, |r, k| {
        if r == (k + d - i % d) % d {
            PhasedScalar::zeta(d as u32, ((j % d) * (k % d)) as i64)
        } else {
            PhasedScalar::zero()
        }
    })
}

/// `rho(x, y, z) = w^z Z^y X^x`.
pub fn heisenberg_matrix(g: &HeisenbergElement) -> ExactMatrix {
    let d = g.d as usize;
    let (x, y, z) = (g.x as usize, g.y as u64, g.z as u64);
    ExactMatrix::from_fn(d, d, |r, k| {
        if r == (k + d - x) % d {
            PhasedScalar::zeta(g.d, ((z + y * r as u64) % g.d as u64) as i64)
        } else {
            PhasedScalar::zero()
        }
    })
}

/// The ordinary representation of the full Heisenberg group on triples.
pub fn heisenberg_rep(d: u32) -> Result<ProjectiveRep<HeisenbergElement, ExactMatrix>> {
    if d < 2 {
        return Err(Error::Invalid(format!("Heisenberg modulus must be at least 2, got {d}")));
    }
    ProjectiveRep::from_group(Heisenberg::new(d), d as usize, heisenberg_matrix)
}

/// The nice basis of `H_d / Z(H_d)` on the transversal `{(x, y, 0)}`.
pub fn heisenberg_nice_rep(d: u32) -> Result<ProjectiveRep<HeisenbergElement, ExactMatrix>> {
    if d < 2 {
        return Err(Error::Invalid(format!("Heisenberg modulus must be at least 2, got {d}")));
    }
    let h = Heisenberg::new(d);
    let t = h.center_transversal();
    let rep = ProjectiveRep::from_central_quotient(
        h,
        t,
        |g: &HeisenbergElement| HeisenbergElement { z: 0, ..*g },
        d as usize,
        heisenberg_matrix,
    )?;
    Ok(rep.memoized())
}

/// Phase factors `w(g, h)` with `rho(g) rho(h) = w(g, h) rho(gh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle<E: Ord> {
    values: BTreeMap<(E, E), PhasedScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleEntry<E> {
    pub g: E,
    pub h: E,
    pub omega: PhasedScalar,
}

impl<E: Label> Cocycle<E> {
    pub fn get(&self, g: &E, h: &E) -> Option<&PhasedScalar> {
        self.values.get(&(g.clone(), h.clone()))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every value equals one, as for an ordinary representation.
    pub fn is_trivial(&self) -> bool {
        self.values.values().all(PhasedScalar::is_one)
    }

    pub fn entries(&self) -> Vec<CocycleEntry<E>> {
        self.values
            .iter()
            .map(|((g, h), w)| CocycleEntry { g: g.clone(), h: h.clone(), omega: w.clone() })
            .collect()
    }
}

/// The single phase `w(g, h)`. Fails if the quotient is not a scalar or not
/// of unit modulus.
pub fn cocycle_value<E: Label, M: Operator + 'static>(rep: &ProjectiveRep<E, M>, g: &E, h: &E) -> Result<PhasedScalar> {
    let w = match &rep.cocycle {
        Some(f) => f(g, h)?,
        None => {
            let gh = rep.compose(g, h);
            rep.matrix(g)
                .compose(&rep.matrix(h))?
                .ratio_to(&rep.matrix(&gh))
                .ok_or_else(|| Error::Invalid(format!("rho({g:?}) rho({h:?}) is not a multiple of rho({gh:?})")))?
        }
    };
    if !w.is_unit_modulus() {
        return Err(Error::Invalid(format!("phase {w} at ({g:?}, {h:?}) does not have unit modulus")));
    }
    Ok(w)
}

/// The cocycle on the requested pairs.
pub fn extract_cocycle<E: Label, M: Operator + 'static>(rep: &ProjectiveRep<E, M>, pairs: &[(E, E)]) -> Result<Cocycle<E>> {
    let values = pairs
        .par_iter()
        .map(|(g, h)| Ok(((g.clone(), h.clone()), cocycle_value(rep, g, h)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Cocycle { values })
}

/// The cocycle on all pairs.
pub fn extract_full_cocycle<E: Label, M: Operator + 'static>(rep: &ProjectiveRep<E, M>) -> Result<Cocycle<E>> {
    extract_cocycle(rep, &PairPlan::All.pairs(rep))
}

/// First triple violating `w(g,h) w(gh,k) = w(h,k) w(g,hk)`, if any.
pub fn cocycle_identity_violation<E: Label, M: Operator + 'static>(
    rep: &ProjectiveRep<E, M>,
    triples: &[(E, E, E)],
) -> Result<Option<(E, E, E)>> {
    let bad = triples
        .par_iter()
        .map(|(g, h, k)| {
            let lhs = cocycle_value(rep, g, h)?.mul(&cocycle_value(rep, &rep.compose(g, h), k)?);
            let rhs = cocycle_value(rep, h, k)?.mul(&cocycle_value(rep, g, &rep.compose(h, k))?);
            Ok(if lhs == rhs { None } else { Some((g.clone(), h.clone(), k.clone())) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(bad.into_iter().flatten().next())
}

/// Uniformly random triples, reproducible from `seed`.
pub fn random_triples<E: Label, M>(rep: &ProjectiveRep<E, M>, count: usize, seed: u64) -> Vec<(E, E, E)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rep.elements.len();
    (0..count)
        .map(|_| {
            let mut pick = || rep.elements[rng.gen_range(0..n)].clone();
            (pick(), pick(), pick())
        })
        .collect()
}

/// Which pairs condition (iii) is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PairPlan {
    All,
    /// Every (generator, element) pair plus `random_pairs` seeded random pairs.
    Sampled { random_pairs: usize, seed: u64 },
}

impl PairPlan {
    pub fn pairs<E: Label, M>(&self, rep: &ProjectiveRep<E, M>) -> Vec<(E, E)> {
        let els = &rep.elements;
        match *self {
            PairPlan::All => els.iter().flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone()))).collect(),
            PairPlan::Sampled { random_pairs, seed } => {
                let mut out: Vec<(E, E)> =
                    rep.generators.iter().flat_map(|s| els.iter().map(move |t| (s.clone(), t.clone()))).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = els.len();
                out.extend((0..random_pairs).map(|_| (els[rng.gen_range(0..n)].clone(), els[rng.gen_range(0..n)].clone())));
                out
            }
        }
    }
}

/// Outcome of one condition, with the first offending element or pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn from_failures(checked: usize, first: Option<String>) -> Check {
        Check { pass: first.is_none(), checked: checked as u64, witness: first }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceReport {
    pub valid: bool,
    pub dim: usize,
    pub index_order: usize,
    pub order_is_dim_squared: bool,
    pub scaled_unitary: Check,
    /// Condition (i): the identity maps to the identity matrix.
    pub identity: Check,
    /// Condition (ii): every other element has a traceless image.
    pub traceless: Check,
    /// Condition (iii): products agree up to a unit phase.
    pub projective: Check,
    pub plan: PairPlan,
    /// A passing report with `d^2` elements certifies a unitary error basis.
    pub certifies_ueb: bool,
}

/// Checks conditions (i) and (ii) on every element and (iii) on `plan`.
pub fn verify_nice<E: Label, M: Operator + 'static>(rep: &ProjectiveRep<E, M>, plan: PairPlan) -> Result<NiceReport> {
    let els = &rep.elements;
    let e = rep.identity();

    let unitary: Vec<Option<String>> = els
        .par_iter()
        .map(|g| {
            match rep.gram(g).and_then(|c| c.as_rational()) {
                Some(s) if s > num_traits::Zero::zero() => None,
                _ => Some(format!("{g:?}")),
            }
        })
        .collect();
    let scaled_unitary = Check::from_failures(els.len(), unitary.into_iter().flatten().next());

    let identity = {
        let ok = rep.matrix(e).as_scalar().is_some_and(|c| c.is_one());
        Check::from_failures(1, (!ok).then(|| format!("{e:?}")))
    };

    let traces = els[1..]
        .par_iter()
        .map(|g| Ok(if rep.matrix(g).trace()?.is_zero() { None } else { Some(format!("{g:?}")) }))
        .collect::<Result<Vec<_>>>()?;
    let traceless = Check::from_failures(els.len() - 1, traces.into_iter().flatten().next());

    let pairs = plan.pairs(rep);
    let bad: Vec<Option<String>> = pairs
        .par_iter()
        .map(|(g, h)| cocycle_value(rep, g, h).err().map(|err| format!("({g:?}, {h:?}): {err}")))
        .collect();
    let projective = Check::from_failures(pairs.len(), bad.into_iter().flatten().next());

    let valid = scaled_unitary.pass && identity.pass && traceless.pass && projective.pass;
    let order_is_dim_squared = els.len() == rep.dim * rep.dim;
    Ok(NiceReport {
        valid,
        dim: rep.dim,
        index_order: els.len(),
        order_is_dim_squared,
        scaled_unitary,
        identity,
        traceless,
        projective,
        plan,
        certifies_ueb: valid && order_is_dim_squared,
    })
}

/// Multiplies every member by a `d`-th root of its inverse determinant, so
/// that all determinants become one.
pub fn det_normalize<E: Label>(rep: &ProjectiveRep<E, ExactMatrix>) -> Result<ProjectiveRep<E, ExactMatrix>> {
    let d = rep.dim as u32;
    let scalars: HashMap<E, PhasedScalar> = rep
        .elements
        .par_iter()
        .map(|g| {
            let det = rep.matrix(g).determinant()?;
            let c = det
                .inv()?
                .root_of_unity_root(d)
                .ok_or_else(|| Error::Unsupported(format!("determinant of rho({g:?}) is not a root of unity")))?;
            Ok((g.clone(), c))
        })
        .collect::<Result<_>>()?;
    Ok(rep.rescaled(move |g| scalars.get(g).cloned().unwrap_or_else(PhasedScalar::one)).memoized())
}

/// Order of the matrix group generated by `gens`, by closure enumeration.
/// Returns `None` once more than `limit` elements have been found.
pub fn matrix_group_order(gens: &[ExactMatrix], limit: usize) -> Result<Option<usize>> {
    let first = gens.first().ok_or_else(|| Error::Invalid("no generators".into()))?;
    let n = first.rows();
    let ambient = gens
        .iter()
        .flat_map(|g| g.entries().iter().map(PhasedScalar::order))
        .fold(1u32, crate::cyclo::poly::lcm_u32);
    let key = |m: &ExactMatrix| -> Result<Vec<Vec<(usize, crate::cyclo::Rational)>>> {
        (0..n * n)
            .map(|k| {
                let v = m.value(k / n, k % n);
                let c = v
                    .as_cyclotomic()
                    .ok_or_else(|| Error::Unsupported("closure of symbolic matrices".into()))?;
                Ok(c.promote(ambient).coeffs())
            })
            .collect()
    };
    let id = ExactMatrix::identity(n);
    let mut seen: HashSet<Vec<Vec<(usize, crate::cyclo::Rational)>>> = HashSet::new();
    seen.insert(key(&id)?);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let p = m.matmul(g)?;
                if seen.insert(key(&p)?) {
                    if seen.len() > limit {
                        return Ok(None);
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(Some(seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_cocycle_is_xz_commutation_phase() {
        // X Z = w Z X gives X^i Z^j X^k Z^l = w^(-jk) X^(i+k) Z^(j+l).
        for d in 2..=5usize {
            let rep = pauli_rep(d).unwrap();
            let w = extract_full_cocycle(&rep).unwrap();
            for &(i, j) in rep.elements() {
                for &(k, l) in rep.elements() {
                    let want = PhasedScalar::zeta(d as u32, -((j * k) as i64));
                    assert_eq!(w.get(&(i, j), &(k, l)).unwrap(), &want);
                }
            }
        }
    }

    #[test]
    fn pauli_member_matches_matrix_powers() {
        let d = 4;
        let (x, z) = (ExactMatrix::pauli_x(d), ExactMatrix::pauli_z(d));
        for i in 0..d {
            for j in 0..d {
                let want = x.pow(i as u64).unwrap().matmul(&z.pow(j as u64).unwrap()).unwrap();
                assert_eq!(pauli_member(d, i, j), want);
            }
        }
    }

    #[test]
    fn heisenberg_rep_is_ordinary() {
        let rep = heisenberg_rep(3).unwrap();
        assert!(extract_full_cocycle(&rep).unwrap().is_trivial());
        let c = rep.matrix(&Heisenberg::new(3).elem(0, 0, 1));
        assert_eq!(c.as_scalar().unwrap(), PhasedScalar::zeta(3, 1));
        let report = verify_nice(&rep, PairPlan::All).unwrap();
        // Central elements are scalars with nonzero trace.
        assert!(!report.traceless.pass);
        assert!(!report.order_is_dim_squared);
    }

    #[test]
    fn heisenberg_quotient_is_nice() {
        for d in [2u32, 3, 4, 5] {
            let rep = heisenberg_nice_rep(d).unwrap();
            let r = verify_nice(&rep, PairPlan::All).unwrap();
            assert!(r.valid && r.certifies_ueb, "{r:?}");
        }
    }

    #[test]
    fn constant_identity_rep_fails_trace_condition() {
        let rep = ProjectiveRep::from_group(PauliIndex { a: Cyclic { n: 2 }, b: Cyclic { n: 2 } }, 2, |_| {
            ExactMatrix::identity(2)
        })
        .unwrap();
        let r = verify_nice(&rep, PairPlan::All).unwrap();
        assert!(r.identity.pass && r.projective.pass);
        assert!(!r.traceless.pass);
        assert_eq!(r.traceless.witness.as_deref(), Some("(0, 1)"));
    }

    #[test]
    fn corrupted_member_breaks_projectivity() {
        let rep = pauli_rep(3).unwrap();
        let bad = rep.with_member(&(1, 1), ExactMatrix::pauli_x(3));
        assert!(cocycle_value(&bad, &(1, 0), &(0, 1)).is_err());
        assert!(!verify_nice(&bad, PairPlan::All).unwrap().valid);
    }

    #[test]
    fn sampled_plan_is_reproducible() {
        let rep = pauli_rep(4).unwrap();
        let plan = PairPlan::Sampled { random_pairs: 50, seed: 9 };
        let p = plan.pairs(&rep);
        assert_eq!(p.len(), 2 * 16 + 50);
        assert_eq!(p, plan.pairs(&rep));
    }

    #[test]
    fn det_normalize_gives_unit_determinant() {
        let rep = pauli_rep(2).unwrap();
        assert_eq!(rep.matrix(&(1, 0)).determinant().unwrap(), PhasedScalar::from_i64(-1));
        let n = det_normalize(&rep).unwrap();
        for g in n.elements() {
            assert!(n.matrix(g).determinant().unwrap().is_one());
            assert!(n.matrix(g).ratio(&rep.matrix(g)).is_some());
        }
        assert!(verify_nice(&n, PairPlan::All).unwrap().valid);
        assert!(n.matrix(&(0, 0)).is_identity());
    }

    #[test]
    fn abstract_error_group_orders() {
        // Plain Pauli matrices generate the order-8 dihedral group; after
        // determinant normalisation X and Z generate the quaternion group.
        let rep = pauli_rep(2).unwrap();
        let gens = [rep.matrix(&(1, 0)), rep.matrix(&(0, 1))];
        assert_eq!(matrix_group_order(&gens, 1000).unwrap(), Some(8));
        let n = det_normalize(&rep).unwrap();
        let gens = [n.matrix(&(1, 0)), n.matrix(&(0, 1))];
        assert_eq!(matrix_group_order(&gens, 1000).unwrap(), Some(8));
        // d = 3: the Heisenberg group of order 27.
        let rep = pauli_rep(3).unwrap();
        let gens = [rep.matrix(&(1, 0)), rep.matrix(&(0, 1))];
        assert_eq!(matrix_group_order(&gens, 1000).unwrap(), Some(27));
        assert_eq!(matrix_group_order(&[ExactMatrix::fourier(3)], 10).unwrap(), None);
    }
}

//! The 165-dimensional nice error basis built from `(H_5 x H_11) x| H_3`.
//!
//! Members are kept as Kronecker products of a 3x3, a 5x5 and an 11x11
//! factor. Factors are drawn from small tables, so the trace sweep and the
//! phase checks only ever multiply matrices of size at most 11.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{PhasedScalar, Rational};
use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, KronMatrix, MonomialityReport, Operator};
use crate::groups::{
    acts_irreducibly, validate_triple, DirectProduct, FiniteGroup, Heisenberg, HeisenbergAut, HeisenbergElement,
    SL2Element, Semidirect,
};
use crate::nice::{heisenberg_matrix, verify_nice, NiceReport, PairPlan, ProjectiveRep};

/// `M^A = A^dagger M A / s`, where `A A^dagger = s I`.
pub fn conjugate(m: &ExactMatrix, a: &ExactMatrix) -> Result<ExactMatrix> {
    let s = a
        .gram_scalar()
        .ok_or_else(|| Error::Invalid("conjugator is not a multiple of a unitary".into()))?;
    Ok(a.dagger().matmul(m)?.matmul(a)?.mul_scalar(&s.inv()?))
}

/// `diag(w^(i (i - 1) / 2))`.
pub fn d_matrix(p: u32) -> ExactMatrix {
    let p64 = p as u64;
    ExactMatrix::diag((0..p64).map(|i| PhasedScalar::zeta(p, ((i * i.saturating_sub(1) / 2) % p64) as i64)).collect())
}

/// Identifies `m` as `rho_p(g)` for a Heisenberg element `g`, if it is one.
pub fn identify_heisenberg(m: &ExactMatrix, p: u32) -> Option<HeisenbergElement> {
    let perm = m.monomial_permutation()?;
    // rho(x, y, z) sends column 0 to row -x.
    let x = (p as usize - perm[0]) % p as usize;
    let h = Heisenberg::new(p);
    (0..p as i64)
        .flat_map(|y| (0..p as i64).map(move |z| (y, z)))
        .map(|(y, z)| h.elem(x as i64, y, z))
        .find(|g| heisenberg_matrix(g) == *m)
}

/// Conjugators for one prime: Fourier `F`, `D`, `B = D Z^e` and
/// `R = (B F)^2 / p`, which is unitary.
#[derive(Clone, Debug)]
pub struct ConjugatorSet {
    pub p: u32,
    pub e: u32,
    pub f: ExactMatrix,
    pub d: ExactMatrix,
    pub b: ExactMatrix,
    pub r: ExactMatrix,
    /// `R^3 = c I`.
    pub r_cubed: PhasedScalar,
    /// The automorphism `rho(g) -> R rho(g) R^dagger` of `H_p`.
    pub sigma: HeisenbergAut,
    /// Action on exponent vectors under `M -> M^R`, columns the images of
    /// `X` and `Z`.
    pub action: SL2Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugatorSummary {
    pub p: u32,
    pub e: u32,
    pub accepted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_is_gamma: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_cubed: Option<PhasedScalar>,
}

impl ConjugatorSet {
    pub fn summary(&self) -> ConjugatorSummary {
        let a = self.action;
        ConjugatorSummary {
            p: self.p,
            e: self.e,
            accepted: true,
            rejection: None,
            action: Some([a.a, a.b, a.c, a.d]),
            action_order: Some(a.order()),
            irreducible: Some(acts_irreducibly(&a)),
            action_is_gamma: Some(a == SL2Element::gamma(self.p)),
            r_cubed: Some(self.r_cubed.clone()),
        }
    }
}

/// Builds the conjugators for `p` and exponent `e`, checking every identity
/// they are meant to satisfy.
pub fn build_conjugators(p: u32, e: u32) -> Result<ConjugatorSet> {
    if !crate::groups::is_odd_prime(p) {
        return Err(Error::Invalid(format!("conjugators need an odd prime, got {p}")));
    }
    let fail = |what: &str| Error::Invalid(format!("p = {p}, e = {e}: {what}"));
    let n = p as usize;
    let (x, z) = (ExactMatrix::pauli_x(n), ExactMatrix::pauli_z(n));
    let x_inv = x.pow(p as u64 - 1)?;

    let f = ExactMatrix::fourier(n);
    if conjugate(&x, &f)? != z || conjugate(&z, &f)? != x_inv {
        return Err(fail("Fourier conjugation does not send X to Z and Z to X^-1"));
    }
    let d = d_matrix(p);
    if conjugate(&x, &d)? != z.matmul(&x)? || conjugate(&z, &d)? != z {
        return Err(fail("D does not send X to ZX and fix Z"));
    }
    let b = d.matmul(&z.pow(e as u64)?)?;
    let bf = b.matmul(&f)?;
    let r = bf.matmul(&bf)?.mul_scalar(&PhasedScalar::rational(&Rational::new(1.into(), (p as i64).into())));
    if !r.gram_scalar().is_some_and(|c| c.is_one()) {
        return Err(fail("R is not unitary"));
    }
    let r_cubed = r.pow(3)?.as_scalar().ok_or_else(|| fail("R^3 is not scalar"))?;

    let rd = r.dagger();
    let image = |m: &ExactMatrix| -> Result<HeisenbergElement> {
        let c = r.matmul(m)?.matmul(&rd)?;
        identify_heisenberg(&c, p).ok_or_else(|| fail("R does not normalise the Heisenberg matrices"))
    };
    let sigma = HeisenbergAut::from_images(image(&x)?, image(&z)?);
    if !sigma.pow(3).is_identity() {
        return Err(fail("conjugation by R does not have order dividing 3"));
    }
    // M -> M^R = R^dagger M R undoes sigma, so its linear part is sigma^2.
    let action = sigma.pow(2).linear_part();
    if action.det() != 1 || action.order() != 3 {
        return Err(fail("induced action is not an order-3 element of SL(2, F_p)"));
    }
    if !acts_irreducibly(&action) {
        return Err(fail("induced action fixes a line"));
    }
    Ok(ConjugatorSet { p, e, f, d, b, r, r_cubed, sigma, action })
}

/// Tries `e` and reports either the accepted set or the reason for rejection.
pub fn conjugator_summary(p: u32, e: u32) -> ConjugatorSummary {
    match build_conjugators(p, e) {
        Ok(c) => c.summary(),
        Err(err) => ConjugatorSummary {
            p,
            e,
            accepted: false,
            rejection: Some(err.to_string()),
            action: None,
            action_order: None,
            irreducible: None,
            action_is_gamma: None,
            r_cubed: None,
        },
    }
}

pub type NElem = (HeisenbergElement, HeisenbergElement);
pub type GElem = (NElem, HeisenbergElement);
pub type G165Group = Semidirect<DirectProduct<Heisenberg, Heisenberg>, Heisenberg>;

/// Slot of a tensor factor: 0 for the `r`-part, 1 for `p`, 2 for `q`.
type FactorKey = (u8, u32, u32, u32);

struct FactorTables {
    r: u32,
    p: u32,
    q: u32,
    /// `Z^y X^x` on the `r`-part, index `x r + y`.
    small: Vec<Arc<ExactMatrix>>,
    /// `rho_p(x, y, 0) R_p^k`, index `(x p + y) 3 + k`.
    left: Vec<Arc<ExactMatrix>>,
    /// `rho_q(x, y, 0) R_q^k`, index `(x q + y) 3 + k`.
    right: Vec<Arc<ExactMatrix>>,
    traces: [Vec<PhasedScalar>; 3],
    ratios: RwLock<HashMap<FactorKey, Option<PhasedScalar>>>,
}

impl FactorTables {
    fn build(r: u32, cp: &ConjugatorSet, cq: &ConjugatorSet) -> Result<FactorTables> {
        let hr = Heisenberg::new(r);
        let small: Vec<Arc<ExactMatrix>> = (0..r as i64)
            .flat_map(|x| (0..r as i64).map(move |y| (x, y)))
            .map(|(x, y)| Arc::new(heisenberg_matrix(&hr.elem(x, y, 0))))
            .collect();
        let table = |c: &ConjugatorSet| -> Result<Vec<Arc<ExactMatrix>>> {
            let h = Heisenberg::new(c.p);
            let powers = [ExactMatrix::identity(c.p as usize), c.r.clone(), c.r.matmul(&c.r)?];
            let keys: Vec<(i64, i64, usize)> = (0..c.p as i64)
                .flat_map(|x| (0..c.p as i64).flat_map(move |y| (0..3).map(move |k| (x, y, k))))
                .collect();
            keys.par_iter()
                .map(|&(x, y, k)| Ok(Arc::new(heisenberg_matrix(&h.elem(x, y, 0)).matmul(&powers[k])?)))
                .collect()
        };
        let left = table(cp)?;
        let right = table(cq)?;
        let tr = |v: &[Arc<ExactMatrix>]| v.par_iter().map(|m| m.trace()).collect::<Result<Vec<_>>>();
        let traces = [tr(&small)?, tr(&left)?, tr(&right)?];
        Ok(FactorTables { r, p: cp.p, q: cq.p, small, left, right, traces, ratios: RwLock::new(HashMap::new()) })
    }

    fn slot(&self, s: u8) -> &[Arc<ExactMatrix>] {
        match s {
            0 => &self.small,
            1 => &self.left,
            _ => &self.right,
        }
    }

    /// Table indices of the three factors of `mu(g)`.
    fn ids(&self, g: &GElem) -> [u32; 3] {
        let ((a, b), h) = g;
        [h.x * self.r + h.y, (a.x * self.p + a.y) * 3 + h.x % 3, (b.x * self.q + b.y) * 3 + h.y % 3]
    }

    /// The scalar in front of the factors: `w_p^z w_q^z w_r^z`.
    fn coeff(&self, g: &GElem) -> PhasedScalar {
        let ((a, b), h) = g;
        PhasedScalar::zeta(self.p, a.z as i64)
            .mul(&PhasedScalar::zeta(self.q, b.z as i64))
            .mul(&PhasedScalar::zeta(self.r, h.z as i64))
    }

    fn mu(&self, g: &GElem) -> KronMatrix {
        let ids = self.ids(g);
        KronMatrix::new(self.coeff(g), (0..3u8).map(|s| self.slot(s)[ids[s as usize] as usize].clone()))
    }

    fn trace(&self, g: &GElem) -> PhasedScalar {
        let ids = self.ids(g);
        let mut t = self.coeff(g);
        for s in 0..3 {
            t = t.mul(&self.traces[s][ids[s] as usize]);
        }
        t
    }

    /// `c` with `T_a T_b = c T_t` for table entries of one slot, memoised.
    fn factor_ratio(&self, key: FactorKey) -> Result<Option<PhasedScalar>> {
        if let Some(v) = self.ratios.read().expect("ratio cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let (s, a, b, t) = key;
        let tab = self.slot(s);
        let v = tab[a as usize].matmul(&tab[b as usize])?.ratio(&tab[t as usize]);
        self.ratios.write().expect("ratio cache poisoned").insert(key, v.clone());
        Ok(v)
    }

    /// `w` with `mu(g) mu(h) = w mu(t)`, or an error if `t` is not
    /// proportional to the product.
    fn phase(&self, g: &GElem, h: &GElem, t: &GElem) -> Result<PhasedScalar> {
        let (ig, ih, it) = (self.ids(g), self.ids(h), self.ids(t));
        let mut w = self.coeff(g).mul(&self.coeff(h)).div(&self.coeff(t))?;
        for s in 0..3u8 {
            let i = s as usize;
            let c = self.factor_ratio((s, ig[i], ih[i], it[i]))?.ok_or_else(|| {
                Error::Invalid(format!("mu({g:?}) mu({h:?}) is not a multiple of mu({t:?}) in factor {s}"))
            })?;
            w = w.mul(&c);
        }
        Ok(w)
    }
}

/// The group `(H_p x H_q) x| H_r` with its matrix map `mu`.
#[derive(Clone)]
pub struct G165 {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub conj_p: ConjugatorSet,
    pub conj_q: ConjugatorSet,
    pub group: G165Group,
    tables: Arc<FactorTables>,
}

/// Zeroes every central coordinate: the representative of `g Z(G)`.
pub fn canonical(g: &GElem) -> GElem {
    let ((a, b), h) = g;
    ((HeisenbergElement { z: 0, ..*a }, HeisenbergElement { z: 0, ..*b }), HeisenbergElement { z: 0, ..*h })
}

/// The instance `p = 5`, `q = 11`, `r = 3`, with `Z^3` in both conjugators.
pub fn build_g165() -> Result<G165> {
    build_group(5, 11, 3, 3, 3)
}

/// `(H_p x H_q) x| H_r`: `(1,0,0)` of `H_r` acts on `H_p` by conjugation
/// with `R_p`, `(0,1,0)` acts on `H_q` with `R_q`, each trivially on the other.
pub fn build_group(p: u32, q: u32, r: u32, e_p: u32, e_q: u32) -> Result<G165> {
    validate_triple(p, q, r)?;
    if r != 3 {
        return Err(Error::Unsupported(format!("conjugators of order {r} are not implemented, only 3")));
    }
    let conj_p = build_conjugators(p, e_p)?;
    let conj_q = build_conjugators(q, e_q)?;
    let tp: Vec<Vec<HeisenbergElement>> = (0..3).map(|k| conj_p.sigma.pow(k).table()).collect();
    let tq: Vec<Vec<HeisenbergElement>> = (0..3).map(|k| conj_q.sigma.pow(k).table()).collect();
    let action = Arc::new(move |h: &HeisenbergElement, n: &NElem| {
        (tp[(h.x % 3) as usize][n.0.index()], tq[(h.y % 3) as usize][n.1.index()])
    });
    let group = Semidirect::new(DirectProduct { a: Heisenberg::new(p), b: Heisenberg::new(q) }, Heisenberg::new(r), action);
    let tables = Arc::new(FactorTables::build(r, &conj_p, &conj_q)?);
    Ok(G165 { p, q, r, conj_p, conj_q, group, tables })
}

impl G165 {
    pub fn dim(&self) -> usize {
        (self.p * self.q * self.r) as usize
    }

    /// `mu(n_p, n_q, (x, y, z)) = (w^z Z^y X^x) (x) rho_p(n_p) R_p^x (x) rho_q(n_q) R_q^y`.
    pub fn mu(&self, g: &GElem) -> KronMatrix {
        self.tables.mu(g)
    }

    /// `tr mu(g)` as a product of factor traces.
    pub fn trace(&self, g: &GElem) -> PhasedScalar {
        self.tables.trace(g)
    }

    /// `w` with `mu(g) mu(h) = w mu(gh)`, on the full group.
    pub fn phase(&self, g: &GElem, h: &GElem) -> Result<PhasedScalar> {
        self.tables.phase(g, h, &self.group.compose(g, h))
    }

    /// The six generator matrices, assembled directly from their description.
    pub fn displayed_generators(&self) -> Vec<KronMatrix> {
        let (r, p, q) = (self.r as usize, self.p as usize, self.q as usize);
        let one = PhasedScalar::one;
        let i = ExactMatrix::identity;
        vec![
            KronMatrix::new(one(), [i(r), ExactMatrix::pauli_x(p), i(q)]),
            KronMatrix::new(one(), [i(r), ExactMatrix::pauli_z(p), i(q)]),
            KronMatrix::new(one(), [i(r), i(p), ExactMatrix::pauli_x(q)]),
            KronMatrix::new(one(), [i(r), i(p), ExactMatrix::pauli_z(q)]),
            KronMatrix::new(one(), [ExactMatrix::pauli_x(r), self.conj_p.r.clone(), i(q)]),
            KronMatrix::new(one(), [ExactMatrix::pauli_z(r), i(p), self.conj_q.r.clone()]),
        ]
    }

    /// Group generators in the same order as [`G165::displayed_generators`].
    pub fn generators(&self) -> Vec<GElem> {
        self.group.generators()
    }

    /// The nice basis on the transversal of the center.
    pub fn nice_rep(&self) -> Result<ProjectiveRep<GElem, KronMatrix>> {
        let t = self.group.center_transversal();
        let (tm, tc, tg) = (self.tables.clone(), self.tables.clone(), self.tables.clone());
        let g = self.group.clone();
        let rep = ProjectiveRep::from_central_quotient(self.group.clone(), t, canonical, self.dim(), move |e| tm.mu(e))?
            .with_cocycle(move |a, b| tc.phase(a, b, &canonical(&g.compose(a, b))))
            .with_gram(move |e| {
                let m = tg.mu(e);
                let mut c = m.coeff.mul(&m.coeff.conj());
                for f in &m.factors {
                    c = c.mul(&f.gram_scalar()?);
                }
                Some(c)
            });
        Ok(rep)
    }

    /// Random elements of the full group.
    pub fn random_elements(&self, count: usize, rng: &mut ChaCha8Rng) -> Vec<GElem> {
        let (p, q, r) = (self.p as i64, self.q as i64, self.r as i64);
        let mut one = |m: i64| -> (i64, i64, i64) { (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m)) };
        (0..count)
            .map(|_| {
                let (a, b, c) = (one(p), one(q), one(r));
                (
                    (HeisenbergElement::new(self.p, a.0, a.1, a.2), HeisenbergElement::new(self.q, b.0, b.1, b.2)),
                    HeisenbergElement::new(self.r, c.0, c.1, c.2),
                )
            })
            .collect()
    }
}

/// Summary of a trace sweep over the transversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSweep {
    pub elements_checked: u64,
    pub nonzero: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<String>,
}

/// Exact traces of `mu(t)` for every non-identity transversal element.
pub fn trace_sweep(g: &G165, transversal: &[GElem]) -> TraceSweep {
    let e = g.group.identity();
    let bad: Vec<&GElem> =
        transversal.par_iter().filter(|t| **t != e).filter(|t| !g.trace(t).is_zero()).collect();
    TraceSweep {
        elements_checked: transversal.iter().filter(|t| **t != e).count() as u64,
        nonzero: bad.len() as u64,
        first_nonzero: bad.first().map(|t| format!("{t:?}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSample {
    pub pairs: u64,
    pub seed: u64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Nonzero counts of Kronecker products, computed from their factors.
pub fn kron_monomiality(ms: &[KronMatrix]) -> Result<MonomialityReport> {
    let mut counts = Vec::with_capacity(ms.len());
    let mut mono = Vec::with_capacity(ms.len());
    let mut total = 0usize;
    for m in ms {
        if m.coeff.is_zero() {
            return Err(Error::ZeroNotAllowed("Kronecker coefficient"));
        }
        counts.push(m.factors.iter().map(|f| f.nonzero_count()).product::<usize>());
        mono.push(m.factors.iter().all(|f| f.is_monomial()));
        total += m.dim() * m.dim();
    }
    let nonzero: usize = counts.iter().sum();
    Ok(MonomialityReport {
        is_monomial: mono.iter().all(|&b| b),
        zero_fraction: Rational::new(((total - nonzero) as i64).into(), (total as i64).into()),
        per_matrix_nonzero_counts: counts,
        per_matrix_monomial: mono,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub valid: bool,
    pub dim: usize,
    pub group_order: u64,
    pub center_order: u64,
    pub center_cyclic: bool,
    pub transversal_size: u64,
    pub conjugators: Vec<ConjugatorSummary>,
    pub generators_match_display: bool,
    pub action_by_automorphisms: bool,
    pub trace_sweep: TraceSweep,
    pub center_scalars: bool,
    pub nice: NiceReport,
    pub homomorphism: PhaseSample,
    pub word_match: PhaseSample,
    pub generator_monomiality: MonomialityReport,
    pub sample_monomiality: MonomialityReport,
    pub nonmonomial_members_found: bool,
    /// What this report does not establish.
    pub note: String,
}

/// Verification settings.
#[derive(Clone, Copy, Debug)]
pub struct CounterexampleOptions {
    pub seed: u64,
    pub random_pairs: usize,
    pub words: usize,
    pub max_word_len: usize,
    pub monomial_sample: usize,
}

impl Default for CounterexampleOptions {
    fn default() -> Self {
        CounterexampleOptions { seed: 0x165, random_pairs: 10_000, words: 1_000, max_word_len: 4, monomial_sample: 100 }
    }
}

/// Runs every exact check on the group and its basis.
pub fn verify_counterexample(g: &G165, opts: CounterexampleOptions) -> Result<CounterexampleReport> {
    let group_order = g.group.order();
    let center = g.group.center();
    let center_cyclic = center.iter().any(|c| g.group.element_order(c) == center.len() as u64);

    let mut conjugators = vec![g.conj_p.summary(), g.conj_q.summary()];
    for (p, e) in [(g.p, g.conj_p.e), (g.q, g.conj_q.e)] {
        let alt = (p + 1) / 2;
        if alt != e {
            conjugators.push(conjugator_summary(p, alt));
        }
    }

    let generators = g.generators();
    let displayed = g.displayed_generators();
    let generators_match_display = generators.iter().zip(&displayed).all(|(s, m)| {
        let mine = g.mu(s);
        mine.coeff == m.coeff && mine.factors.iter().zip(&m.factors).all(|(a, b)| a == b)
    }) && generators.len() == displayed.len();

    // The semidirect action: sigma is checked on the generators of each
    // Heisenberg factor, which suffices since it is defined by their images.
    let action_by_automorphisms = [&g.conj_p.sigma, &g.conj_q.sigma].iter().all(|s| s.pow(3).is_identity());

    let rep = g.nice_rep()?;
    let transversal = rep.elements().to_vec();
    let sweep = trace_sweep(g, &transversal);

    let hr = Heisenberg::new(g.r);
    let e_n = (Heisenberg::new(g.p).identity(), Heisenberg::new(g.q).identity());
    let center_gens: Vec<GElem> = vec![
        ((HeisenbergElement::new(g.p, 0, 0, 1), e_n.1), hr.identity()),
        ((e_n.0, HeisenbergElement::new(g.q, 0, 0, 1)), hr.identity()),
        (e_n, hr.elem(0, 0, 1)),
    ];
    let center_scalars = center_gens.iter().all(|c| g.mu(c).as_scalar().is_some());

    let plan = PairPlan::Sampled { random_pairs: opts.random_pairs, seed: opts.seed };
    let nice = verify_nice(&rep, plan)?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let xs = g.random_elements(opts.random_pairs, &mut rng);
    let ys = g.random_elements(opts.random_pairs, &mut rng);
    let bad = xs
        .par_iter()
        .zip(&ys)
        .find_first(|(a, b)| g.phase(a, b).map(|w| !w.is_unit_modulus()).unwrap_or(true))
        .map(|(a, b)| format!("({a:?}, {b:?})"));
    let homomorphism = PhaseSample { pairs: opts.random_pairs as u64, seed: opts.seed, pass: bad.is_none(), witness: bad };

    let words: Vec<Vec<usize>> = (0..opts.words)
        .map(|_| {
            let len = rng.gen_range(1..=opts.max_word_len);
            (0..len).map(|_| rng.gen_range(0..generators.len())).collect()
        })
        .collect();
    let bad = words
        .par_iter()
        .map(|w| -> Result<Option<String>> {
            let mut elem = g.group.identity();
            let mut mat = displayed[w[0]].clone();
            for (i, &k) in w.iter().enumerate() {
                elem = g.group.compose(&elem, &generators[k]);
                if i > 0 {
                    mat = mat.compose(&displayed[k])?;
                }
            }
            let ok = mat.ratio_to(&g.mu(&elem)).is_some_and(|c| c.is_unit_modulus());
            Ok((!ok).then(|| format!("{w:?}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let word_match = PhaseSample { pairs: opts.words as u64, seed: opts.seed, pass: bad.is_none(), witness: bad };

    let generator_monomiality = kron_monomiality(&displayed)?;
    let sample: Vec<KronMatrix> = (0..opts.monomial_sample)
        .map(|_| g.mu(&transversal[rng.gen_range(0..transversal.len())]))
        .collect();
    let sample_monomiality = kron_monomiality(&sample)?;
    let nonmonomial_members_found = generator_monomiality.per_matrix_monomial.iter().any(|m| !m)
        || sample_monomiality.per_matrix_monomial.iter().any(|m| !m);

    let valid = group_order == (g.p as u64 * g.q as u64 * g.r as u64).pow(3)
        && center.len() as u64 == (g.p * g.q * g.r) as u64
        && center_cyclic
        && transversal.len() == g.dim() * g.dim()
        && generators_match_display
        && action_by_automorphisms
        && sweep.nonzero == 0
        && center_scalars
        && nice.valid
        && homomorphism.pass
        && word_match.pass
        && nonmonomial_members_found;

    Ok(CounterexampleReport {
        valid,
        dim: g.dim(),
        group_order,
        center_order: center.len() as u64,
        center_cyclic,
        transversal_size: transversal.len() as u64,
        conjugators,
        generators_match_display,
        action_by_automorphisms,
        trace_sweep: sweep,
        center_scalars,
        nice,
        homomorphism,
        word_match,
        generator_monomiality,
        sample_monomiality,
        nonmonomial_members_found,
        note: "members are checked to be nonmonomial as given; that no equivalent basis is monomial rests on \
               the group having no subgroup of index 165, which is not re-verified here"
            .into(),
    })
}

/// Factor-form export: the conjugators, the six generators in factor form
/// and, optionally, as dense 165x165 matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorBundle {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub exponents: [u32; 2],
    pub r_p: ExactMatrix,
    pub r_q: ExactMatrix,
    pub generators: Vec<KronMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_generators: Option<Vec<ExactMatrix>>,
}

pub fn export_bundle(g: &G165, dense: bool) -> FactorBundle {
    let generators = g.displayed_generators();
    let dense_generators = dense.then(|| generators.par_iter().map(KronMatrix::dense).collect());
    FactorBundle {
        p: g.p,
        q: g.q,
        r: g.r,
        exponents: [g.conj_p.e, g.conj_q.e],
        r_p: g.conj_p.r.clone(),
        r_q: g.conj_q.r.clone(),
        generators,
        dense_generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_and_d_identities() {
        for p in [3u32, 5, 7, 11] {
            let n = p as usize;
            let (x, z) = (ExactMatrix::pauli_x(n), ExactMatrix::pauli_z(n));
            let f = ExactMatrix::fourier(n);
            assert_eq!(conjugate(&x, &f).unwrap(), z);
            assert_eq!(conjugate(&z, &f).unwrap(), x.pow(p as u64 - 1).unwrap());
            // The opposite convention sends X to Z^-1 instead.
            let other = f.matmul(&x).unwrap().matmul(&f.dagger()).unwrap().mul_scalar(&PhasedScalar::rational(
                &Rational::new(1.into(), (p as i64).into()),
            ));
            assert_ne!(other, z);
            let d = d_matrix(p);
            assert_eq!(conjugate(&x, &d).unwrap(), z.matmul(&x).unwrap());
            assert_eq!(conjugate(&z, &d).unwrap(), z);
        }
    }

    #[test]
    fn identify_heisenberg_round_trip() {
        let h = Heisenberg::new(5);
        for g in h.elements() {
            assert_eq!(identify_heisenberg(&heisenberg_matrix(&g), 5), Some(g));
        }
        assert_eq!(identify_heisenberg(&ExactMatrix::fourier(5), 5), None);
    }

    #[test]
    fn r5_conjugators() {
        let c = build_conjugators(5, 3).unwrap();
        assert_eq!(c.action.order(), 3);
        assert!(acts_irreducibly(&c.action));
        assert!(!c.r.is_monomial());
        assert_eq!(c.r.pow(3).unwrap().as_scalar().unwrap(), c.r_cubed);
    }

    #[test]
    fn g165_generators_and_phases() {
        let g = build_g165().unwrap();
        assert_eq!(g.group.order(), 4_492_125);
        assert_eq!(g.group.center().len(), 165);
        let gens = g.generators();
        for (s, m) in gens.iter().zip(g.displayed_generators()) {
            let mine = g.mu(s);
            assert!(mine.coeff.is_one());
            assert!(mine.factors.iter().zip(&m.factors).all(|(a, b)| a == b));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs = g.random_elements(20, &mut rng);
        for w in xs.windows(2) {
            assert!(g.phase(&w[0], &w[1]).unwrap().is_unit_modulus());
            let t = canonical(&w[0]);
            if t != g.group.identity() {
                assert!(g.trace(&t).is_zero());
            }
        }
        let z5 = ((HeisenbergElement::new(5, 0, 0, 1), Heisenberg::new(11).identity()), Heisenberg::new(3).identity());
        assert_eq!(g.mu(&z5).as_scalar().unwrap(), PhasedScalar::zeta(5, 1));
    }

    #[test]
    fn other_triples_validated() {
        assert!(matches!(build_group(5, 7, 3, 3, 4), Err(Error::Invalid(_))));
        assert!(matches!(build_group(5, 11, 3, 3, 3).map(|g| g.dim()), Ok(165)));
        assert!(matches!(build_group(5, 11, 7, 3, 3), Err(Error::Invalid(_))));
    }

    #[test]
    fn r11_both_exponents_reported() {
        for e in [3u32, 6] {
            let s = conjugator_summary(11, e);
            assert_eq!(s.p, 11);
            if s.accepted {
                assert_eq!(s.action_order, Some(3));
                assert_eq!(s.irreducible, Some(true));
            } else {
                assert!(s.rejection.is_some());
            }
        }
    }
}

//! Unitary error bases: verification, shift-and-multiply construction,
//! normalisation in dimension two, and the finite-order obstruction to
//! niceness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::combinat::{HadamardSequence, LatinSquare};
use crate::cyclo::PhasedScalar;
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;

/// `d^2` matrices of size `d x d` together with their labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryErrorBasis {
    pub d: usize,
    pub members: Vec<ExactMatrix>,
    #[serde(default)]
    pub labels: Vec<Value>,
}

impl UnitaryErrorBasis {
    pub fn new(d: usize, members: Vec<ExactMatrix>, labels: Vec<Value>) -> Result<UnitaryErrorBasis> {
        check_shape(d, &members)?;
        if !labels.is_empty() && labels.len() != members.len() {
            return Err(Error::Invalid(format!("{} labels for {} members", labels.len(), members.len())));
        }
        Ok(UnitaryErrorBasis { d, members, labels })
    }

    pub fn validate_shape(&self) -> Result<()> {
        check_shape(self.d, &self.members)
    }
}

fn check_shape(d: usize, members: &[ExactMatrix]) -> Result<()> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    if members.len() != d * d {
        return Err(Error::Dimension(format!("expected {} members, got {}", d * d, members.len())));
    }
    if let Some(i) = members.iter().position(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::Dimension(format!("member {i} is not {d}x{d}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityViolation {
    pub first: usize,
    pub second: usize,
    /// `tr(E^dagger F)`, which should have been zero.
    pub trace: PhasedScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UebReport {
    pub valid: bool,
    pub d: usize,
    pub members_checked: usize,
    pub pairs_checked: usize,
    /// Members that are not a positive multiple of a unitary.
    pub non_unitary_members: Vec<usize>,
    pub orthogonality_violations: Vec<OrthogonalityViolation>,
}

/// Checks scaled unitarity of every member and `tr(E^dagger F) = 0` for all
/// distinct pairs, exactly.
pub fn verify_ueb(d: usize, members: &[ExactMatrix]) -> Result<UebReport> {
    check_shape(d, members)?;
    let non_unitary_members: Vec<usize> = members
        .par_iter()
        .enumerate()
        .filter(|(_, m)| m.is_scaled_unitary().is_none())
        .map(|(i, _)| i)
        .collect();
    let n = members.len();
    let orthogonality_violations: Vec<OrthogonalityViolation> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let t = ExactMatrix::trace_inner(&members[i], &members[j]).expect("shapes checked");
                if !t.is_zero() {
                    out.push(OrthogonalityViolation { first: i, second: j, trace: t });
                }
            }
            out
        })
        .flatten()
        .collect();
    Ok(UebReport {
        valid: non_unitary_members.is_empty() && orthogonality_violations.is_empty(),
        d,
        members_checked: n,
        pairs_checked: n * (n.saturating_sub(1)) / 2,
        non_unitary_members,
        orthogonality_violations,
    })
}

/// `E_ij = P_j diag(H^(j)_ik : k)`, so `E_ij |k> = H^(j)_ik |L(j, k)>`.
/// Members are ordered by `(i, j)` and labelled `[i, j]`.
pub fn shift_and_multiply(l: &LatinSquare, h: &HadamardSequence) -> Result<UnitaryErrorBasis> {
    let d = l.order();
    if h.order() != d {
        return Err(Error::Dimension(format!("Latin square of order {d} with {} Hadamard matrices", h.order())));
    }
    let mut members = Vec::with_capacity(d * d);
    let mut labels = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let hj = h.get(j);
            let mut entries = vec![PhasedScalar::zero(); d * d];
            for k in 0..d {
                entries[l.get(j, k) * d + k] = hj.value(i, k);
            }
            members.push(ExactMatrix::from_entries(d, d, entries));
            labels.push(serde_json::json!([i, j]));
        }
    }
    UnitaryErrorBasis::new(d, members, labels)
}

/// The Pauli quadruple `I, X, Z, Y` with `Y = [[0, -i], [i, 0]]`.
pub fn pauli_set() -> Vec<ExactMatrix> {
    let (o, l) = (PhasedScalar::zero, PhasedScalar::one);
    let i = || PhasedScalar::zeta(4, 1);
    vec![
        ExactMatrix::identity(2),
        ExactMatrix::from_entries(2, 2, vec![o(), l(), l(), o()]),
        ExactMatrix::from_entries(2, 2, vec![l(), o(), o(), PhasedScalar::from_i64(-1)]),
        ExactMatrix::from_entries(2, 2, vec![o(), i().neg(), i(), o()]),
    ]
}

/// Data realising `E_k = c_k A P_(pi(k)) B` for the Pauli set `P`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct D2Normalization {
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub scalars: Vec<PhasedScalar>,
    /// Index into [`pauli_set`] for each input member.
    pub pauli_index: Vec<usize>,
    /// `c_k^-1 A^-1 E_k B^-1`, equal to the Pauli matrices in input order.
    pub canonical: Vec<ExactMatrix>,
}

impl D2Normalization {
    /// `c_k A P_(pi(k)) B` for every member.
    pub fn reconstruct(&self) -> Result<Vec<ExactMatrix>> {
        let p = pauli_set();
        self.pauli_index
            .iter()
            .zip(&self.scalars)
            .map(|(&k, c)| Ok(self.a.matmul(&p[k])?.matmul(&self.b)?.mul_scalar(c)))
            .collect()
    }
}

/// Normalises a unitary error basis in dimension two to the Pauli basis.
///
/// Left-multiplying by the inverse of the first member turns it into the
/// identity. A second member is then traceless with eigenvalues `+-lambda`;
/// diagonalising it makes the remaining two members antidiagonal, and a final
/// diagonal conjugation by `diag(1, mu / a)` with `mu^2 = a b` turns
/// `[[0, a], [b, 0]]` into `mu X`. The conjugator is scaled-unitary because the two eigenvector
/// columns are taken from complementary positions of the two spectral
/// projectors, which have equal norm.
pub fn normalize_d2(members: &[ExactMatrix]) -> Result<D2Normalization> {
    let report = verify_ueb(2, members)?;
    if !report.valid {
        return Err(Error::Invalid("input is not a unitary error basis".into()));
    }
    let u = &members[0];
    let u_inv = u.inverse()?;
    let f: Vec<ExactMatrix> = members.iter().map(|m| u_inv.matmul(m)).collect::<Result<_>>()?;
    // Prefer a member that is already diagonal.
    let pick = (1..4).find(|&k| f[k].is_diagonal()).unwrap_or(1);
    let w = eigenbasis_2x2(&f[pick])?;
    let w_inv = w.inverse()?;
    let g: Vec<ExactMatrix> =
        f.iter().map(|m| w_inv.matmul(m)?.matmul(&w)).collect::<Result<_>>()?;
    let other = (1..4).find(|&k| k != pick).expect("four members");
    let (a, b) = (g[other].value(0, 1), g[other].value(1, 0));
    // ab = -det, a phase whenever the members share a norm, while b / a also
    // carries the arbitrary eigenvector scaling.
    let ab = a.mul(&b);
    let mu = ab.sqrt_phase().ok_or_else(|| Error::Unsupported(format!("no representable square root of {ab}")))?;
    let dm = ExactMatrix::diag(vec![PhasedScalar::one(), mu.div(&a)?]);
    let t = w.matmul(&dm)?;
    let t_inv = t.inverse()?;
    let a_mat = u.matmul(&t)?;
    let a_inv = a_mat.inverse()?;
    let pauli = pauli_set();
    let mut scalars = Vec::with_capacity(4);
    let mut pauli_index = Vec::with_capacity(4);
    let mut canonical = Vec::with_capacity(4);
    for m in members {
        let core = a_inv.matmul(m)?.matmul(&t)?;
        let (k, c) = pauli
            .iter()
            .enumerate()
            .find_map(|(k, p)| core.ratio(p).map(|c| (k, c)))
            .ok_or_else(|| Error::Invalid("member is not proportional to a Pauli matrix after normalisation".into()))?;
        canonical.push(core.mul_scalar(&c.inv()?));
        scalars.push(c);
        pauli_index.push(k);
    }
    Ok(D2Normalization { a: a_mat, b: t_inv, scalars, pauli_index, canonical })
}

/// Columns: a `lambda`-eigenvector and a `-lambda`-eigenvector of a traceless
/// 2x2 matrix with `M^2 = lambda^2 I`.
fn eigenbasis_2x2(m: &ExactMatrix) -> Result<ExactMatrix> {
    if m.is_diagonal() {
        return Ok(ExactMatrix::identity(2));
    }
    let neg_det = m.determinant()?.neg();
    let lambda = neg_det
        .sqrt_phase()
        .ok_or_else(|| Error::Unsupported(format!("no representable square root of {neg_det}")))?;
    let m = m.normalized();
    let shift = |s: &PhasedScalar| {
        ExactMatrix::from_fn(2, 2, |i, j| if i == j { m.entry(i, j).add(s) } else { m.entry(i, j).clone() })
    };
    let plus = shift(&lambda);
    let minus = shift(&lambda.neg());
    let col_nonzero = |a: &ExactMatrix, j: usize| !a.entry(0, j).is_zero() || !a.entry(1, j).is_zero();
    let j = (0..2).find(|&j| col_nonzero(&plus, j) && col_nonzero(&minus, 1 - j)).ok_or_else(|| {
        Error::Invalid("matrix is not diagonalisable with the expected spectrum".into())
    })?;
    Ok(ExactMatrix::from_entries(
        2,
        2,
        vec![plus.entry(0, j).clone(), minus.entry(0, 1 - j).clone(), plus.entry(1, j).clone(), minus.entry(1, 1 - j).clone()],
    ))
}

/// A diagonal product whose entries cannot all be made roots of unity by one
/// rescaling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WickednessWitness {
    pub member_pair: (usize, usize),
    pub diagonal_entries: Vec<PhasedScalar>,
    pub offending_ratio: PhasedScalar,
}

/// Searches pairs `(E_a, E_b)` with `b < a` for a diagonal `E_a E_b^dagger`
/// whose diagonal ratios `m_k / m_0` are not all roots of unity. Pairs with
/// `b > a` give the conjugate product, whose ratios are conjugates, so they
/// add nothing. A witness means no rescaling makes the product of finite
/// order, so the basis is not equivalent to a nice error basis. `None` is
/// inconclusive.
pub fn wickedness_witness(members: &[ExactMatrix]) -> Result<Option<WickednessWitness>> {
    let daggers: Vec<ExactMatrix> = members.iter().map(ExactMatrix::dagger).collect();
    for a in 0..members.len() {
        for b in 0..a {
            let prod = members[a].matmul(&daggers[b])?;
            if !prod.is_diagonal() {
                continue;
            }
            let diag = prod.diagonal();
            if diag.iter().any(PhasedScalar::is_zero) {
                continue;
            }
            for k in 1..diag.len() {
                let r = diag[k].div(&diag[0])?;
                if r.root_of_unity_order()?.is_none() {
                    return Ok(Some(WickednessWitness {
                        member_pair: (a, b),
                        diagonal_entries: diag,
                        offending_ratio: r,
                    }));
                }
            }
        }
    }
    Ok(None)
}

//! Dense matrices over [`PhasedScalar`] with an explicit rational scale.
//!
//! The value of a matrix is `scale * entries`. Keeping the scale separate lets
//! unnormalised Fourier matrices stay inside a cyclotomic field: the `1/sqrt(p)`
//! normalisation never appears, only rational factors like `1/p`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{PhasedScalar, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    scale: Rational,
    entries: Vec<PhasedScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<PhasedScalar>, scale: Rational) -> Result<ExactMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix needs positive dimensions".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix given {} entries", entries.len())));
        }
        if scale.is_zero() {
            return Err(Error::Invalid("matrix scale must be nonzero".into()));
        }
        Ok(ExactMatrix { rows, cols, scale, entries })
    }

    /// Scale-one matrix from row-major entries. Panics on a length mismatch.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<PhasedScalar>) -> ExactMatrix {
        ExactMatrix::new(rows, cols, entries, Rational::one()).expect("entry count matches shape")
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> PhasedScalar) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix::from_entries(rows, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::from_entries(rows, cols, vec![PhasedScalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> ExactMatrix {
        ExactMatrix::diag(vec![PhasedScalar::one(); n])
    }

    pub fn diag(d: Vec<PhasedScalar>) -> ExactMatrix {
        let n = d.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    /// Permutation matrix sending basis vector `k` to `perm[k]`.
    pub fn permutation(perm: &[usize]) -> ExactMatrix {
        let n = perm.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (k, &r) in perm.iter().enumerate() {
            m.entries[r * n + k] = PhasedScalar::one();
        }
        m
    }

    /// Cyclic shift `X_d |x> = |x - 1 mod d>`.
    pub fn pauli_x(d: usize) -> ExactMatrix {
        let perm: Vec<usize> = (0..d).map(|x| (x + d - 1) % d).collect();
        ExactMatrix::permutation(&perm)
    }

    /// Clock matrix `Z_d = diag(1, w, ..., w^(d-1))` with `w = zeta_d`.
    pub fn pauli_z(d: usize) -> ExactMatrix {
        ExactMatrix::diag((0..d).map(|k| PhasedScalar::zeta(d as u32, k as i64)).collect())
    }

    /// Unnormalised Fourier matrix `(w^(kl))`.
    pub fn fourier(d: usize) -> ExactMatrix {
        ExactMatrix::from_fn(d, d, |k, l| PhasedScalar::zeta(d as u32, ((k * l) % d) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Raw entry, without the scale.
    pub fn entry(&self, i: usize, j: usize) -> &PhasedScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[PhasedScalar] {
        &self.entries
    }

    /// Entry including the scale.
    pub fn value(&self, i: usize, j: usize) -> PhasedScalar {
        self.entry(i, j).scale_rational(&self.scale)
    }

    pub fn with_scale(mut self, scale: Rational) -> ExactMatrix {
        assert!(!scale.is_zero(), "matrix scale must be nonzero");
        self.scale = scale;
        self
    }

    /// Folds the scale into the entries.
    pub fn normalized(&self) -> ExactMatrix {
        if self.scale.is_one() {
            return self.clone();
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            scale: Rational::one(),
            entries: self.entries.iter().map(|e| e.scale_rational(&self.scale)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&PhasedScalar) -> PhasedScalar) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            scale: self.scale.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &PhasedScalar) -> ExactMatrix {
        if let Some(r) = c.as_rational() {
            if r.is_zero() {
                return ExactMatrix::zeros(self.rows, self.cols);
            }
            let mut m = self.clone();
            m.scale *= r;
            return m;
        }
        self.map(|e| e.mul(c))
    }

    /// Exact product; skips zero entries of both operands.
    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m) = (self.rows, other.cols);
        let mut out: Vec<Option<PhasedScalar>> = vec![None; n * m];
        let other_nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..m).filter(|&j| !other.entry(k, j).is_zero()).collect())
            .collect();
        for i in 0..n {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &other_nz[k] {
                    let p = a.mul(other.entry(k, j));
                    let slot = &mut out[i * m + j];
                    *slot = Some(match slot.take() {
                        None => p,
                        Some(acc) => acc.add(&p),
                    });
                }
            }
        }
        let entries = out.into_iter().map(|e| e.unwrap_or_else(PhasedScalar::zero)).collect();
        Ok(ExactMatrix { rows: n, cols: m, scale: &self.scale * &other.scale, entries })
    }

    /// Product of a chain of matrices, left to right.
    pub fn product<'a>(ms: impl IntoIterator<Item = &'a ExactMatrix>) -> Result<ExactMatrix> {
        let mut it = ms.into_iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty product".into()))?.clone();
        it.try_fold(first, |acc, m| acc.matmul(m))
    }

    pub fn pow(&self, e: u64) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = ExactMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Conjugate transpose. The rational scale is its own conjugate.
    pub fn dagger(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).conj()).with_scale(self.scale.clone())
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone()).with_scale(self.scale.clone())
    }

    pub fn trace(&self) -> Result<PhasedScalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("trace of a {}x{} matrix", self.rows, self.cols)));
        }
        let s = (0..self.rows).fold(PhasedScalar::zero(), |acc, i| acc.add(self.entry(i, i)));
        Ok(s.scale_rational(&self.scale))
    }

    /// `tr(A^dagger B)` computed entrywise, without forming the product.
    pub fn trace_inner(a: &ExactMatrix, b: &ExactMatrix) -> Result<PhasedScalar> {
        if a.rows != b.rows || a.cols != b.cols {
            return Err(Error::Dimension("trace inner product needs equal shapes".into()));
        }
        let mut acc = PhasedScalar::zero();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc.add(&x.conj().mul(y));
        }
        Ok(acc.scale_rational(&(&a.scale * &b.scale)))
    }

    /// Kronecker product `A (x) B`, indexed `((i, k), (j, l)) -> a_ij b_kl`.
    pub fn tensor(&self, other: &ExactMatrix) -> ExactMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    let a = self.entry(i, j);
                    for l in 0..other.cols {
                        let b = other.entry(k, l);
                        entries.push(if a.is_zero() || b.is_zero() { PhasedScalar::zero() } else { a.mul(b) });
                    }
                }
            }
        }
        ExactMatrix { rows: r, cols: c, scale: &self.scale * &other.scale, entries }
    }

    pub fn tensor_all<'a>(ms: impl IntoIterator<Item = &'a ExactMatrix>) -> ExactMatrix {
        ms.into_iter().fold(ExactMatrix::identity(1), |acc, m| acc.tensor(m))
    }

    pub fn substitute(&self, symbol: &str, value: &PhasedScalar) -> Result<ExactMatrix> {
        let entries = self.entries.iter().map(|e| e.substitute(symbol, value)).collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(self.rows, self.cols, entries, self.scale.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PhasedScalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entry(i, j).is_zero()))
    }

    /// Diagonal values including the scale.
    pub fn diagonal(&self) -> Vec<PhasedScalar> {
        (0..self.rows.min(self.cols)).map(|i| self.value(i, i)).collect()
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<PhasedScalar> {
        if !self.is_diagonal() {
            return None;
        }
        let first = self.entry(0, 0);
        if (1..self.rows).all(|i| self.entry(i, i) == first) {
            Some(first.scale_rational(&self.scale))
        } else {
            None
        }
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// Returns `s` when `A A^dagger = s I` with `s` rational and positive.
    pub fn is_scaled_unitary(&self) -> Option<Rational> {
        let s = self.gram_scalar()?.as_rational()?;
        if s.is_positive() {
            Some(s)
        } else {
            None
        }
    }

    /// Returns `c` when `A A^dagger = c I` for some scalar `c`.
    pub fn gram_scalar(&self) -> Option<PhasedScalar> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut diag: Option<PhasedScalar> = None;
        for i in 0..n {
            for j in i..n {
                let mut acc = PhasedScalar::zero();
                for k in 0..n {
                    let (a, b) = (self.entry(i, k), self.entry(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(&b.conj()));
                    }
                }
                if i == j {
                    match &diag {
                        None => diag = Some(acc),
                        Some(d) if *d == acc => {}
                        Some(_) => return None,
                    }
                } else if !acc.is_zero() {
                    return None;
                }
            }
        }
        let c = diag?;
        if c.is_zero() {
            return None;
        }
        Some(c.scale_rational(&(&self.scale * &self.scale)))
    }

    /// Inverse by Gauss-Jordan elimination; pivots must be invertible scalars.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<PhasedScalar>> =
            (0..n).map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect()).collect();
        let mut inv: Vec<Vec<PhasedScalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { PhasedScalar::one() } else { PhasedScalar::zero() }).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r][col].inv().is_ok())
                .ok_or_else(|| Error::NotInvertible("matrix has no invertible pivot".into()))?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let pinv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = a[col][c].mul(&pinv);
                inv[col][c] = inv[col][c].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                    }
                    if !inv[col][c].is_zero() {
                        inv[r][c] = inv[r][c].sub(&f.mul(&inv[col][c]));
                    }
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        ExactMatrix::new(n, n, entries, num_traits::Inv::inv(self.scale.clone()))
    }

    /// `Some(c)` with `self = c * other`, if such a scalar exists.
    pub fn ratio(&self, other: &ExactMatrix) -> Option<PhasedScalar> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let mut c: Option<PhasedScalar> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                (false, false) => {}
            }
            match &c {
                None => c = Some(a.div(b).ok()?),
                Some(c) => {
                    if *a != c.mul(b) {
                        return None;
                    }
                }
            }
        }
        let c = c?;
        Some(c.scale_rational(&(&self.scale / &other.scale)))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        self.monomial_permutation().is_some()
    }

    /// For a monomial matrix, `perm[j]` is the row of the nonzero in column `j`.
    pub fn monomial_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut row_seen = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if !self.entry(i, j).is_zero() {
                    if perm[j] != usize::MAX || row_seen[i] {
                        return None;
                    }
                    perm[j] = i;
                    row_seen[i] = true;
                }
            }
        }
        if row_seen.iter().all(|&s| s) {
            Some(perm)
        } else {
            None
        }
    }

    pub fn zero_fraction(&self) -> Rational {
        let total = self.entries.len();
        Rational::new(((total - self.nonzero_count()) as i64).into(), (total as i64).into())
    }

    /// Determinant. Monomial matrices use the permutation sign; others use
    /// Gaussian elimination, which needs invertible pivots (so symbol entries
    /// are only supported in the monomial case).
    pub fn determinant(&self) -> Result<PhasedScalar> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let scale_n = num_traits::pow(self.scale.clone(), n);
        if let Some(perm) = self.monomial_permutation() {
            let mut prod = PhasedScalar::one();
            for (j, &i) in perm.iter().enumerate() {
                prod = prod.mul(self.entry(i, j));
            }
            let signed = if permutation_is_odd(&perm) { prod.neg() } else { prod };
            return Ok(signed.scale_rational(&scale_n));
        }
        let mut a: Vec<Vec<PhasedScalar>> =
            (0..n).map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect()).collect();
        let mut det = PhasedScalar::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(PhasedScalar::zero());
            };
            if piv != col {
                a.swap(piv, col);
                det = det.neg();
            }
            let p = a[col][col].clone();
            let pinv = p.inv().map_err(|_| Error::Unsupported("determinant pivot is not invertible".into()))?;
            det = det.mul(&p);
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&pinv);
                for c in col..n {
                    if !a[col][c].is_zero() {
                        let t = f.mul(&a[col][c]);
                        a[r][c] = a[r][c].sub(&t);
                    }
                }
            }
        }
        Ok(det.scale_rational(&scale_n))
    }

    /// Largest cyclotomic order among the entries.
    pub fn max_order(&self) -> u32 {
        self.entries.iter().map(PhasedScalar::order).max().unwrap_or(1)
    }

    /// Every formal symbol occurring in an entry.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.entries.iter().flat_map(|e| e.symbols()).collect();
        out.sort();
        out.dedup();
        out
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &ExactMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        if self.scale == other.scale {
            return self.entries == other.entries;
        }
        let r = &other.scale / &self.scale;
        self.entries.iter().zip(&other.entries).all(|(a, b)| *a == b.scale_rational(&r))
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} scale {}", self.rows, self.cols, self.scale)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    #[serde(default = "one_str")]
    scale: String,
    entries: Vec<PhasedScalar>,
}

fn one_str() -> String {
    "1".into()
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            scale: self.scale.to_string(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<ExactMatrix, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        let scale: Rational = j.scale.trim().parse().map_err(|e| D::Error::custom(format!("bad scale: {e}")))?;
        ExactMatrix::new(j.rows, j.cols, j.entries, scale).map_err(D::Error::custom)
    }
}

/// Monomiality and sparsity summary of a matrix family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialityReport {
    pub is_monomial: bool,
    #[serde(serialize_with = "ser_rational")]
    pub zero_fraction: Rational,
    pub per_matrix_nonzero_counts: Vec<usize>,
    pub per_matrix_monomial: Vec<bool>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn monomiality_report(ms: &[ExactMatrix]) -> Result<MonomialityReport> {
    let Some(first) = ms.first() else {
        return Err(Error::Invalid("empty matrix family".into()));
    };
    let n = first.rows;
    if ms.iter().any(|m| m.rows != n || m.cols != n) {
        return Err(Error::Dimension("monomiality report needs equal square matrices".into()));
    }
    let counts: Vec<usize> = ms.iter().map(ExactMatrix::nonzero_count).collect();
    let monomial: Vec<bool> = ms.iter().map(ExactMatrix::is_monomial).collect();
    let total = (ms.len() * n * n) as i64;
    let nonzero: usize = counts.iter().sum();
    Ok(MonomialityReport {
        is_monomial: monomial.iter().all(|&b| b),
        zero_fraction: Rational::new((total - nonzero as i64).into(), total.into()),
        per_matrix_nonzero_counts: counts,
        per_matrix_monomial: monomial,
    })
}

/// A matrix kept as `coeff * (F_1 (x) F_2 (x) ... (x) F_k)`.
///
/// Factors are shared, so cached factor matrices cost nothing to reuse.
#[derive(Clone, Debug)]
pub struct KronMatrix {
    pub coeff: PhasedScalar,
    pub factors: Vec<Arc<ExactMatrix>>,
}

impl KronMatrix {
    pub fn new<F: Into<Arc<ExactMatrix>>>(coeff: PhasedScalar, factors: impl IntoIterator<Item = F>) -> KronMatrix {
        KronMatrix { coeff, factors: factors.into_iter().map(Into::into).collect() }
    }

    pub fn dense(&self) -> ExactMatrix {
        ExactMatrix::tensor_all(self.factors.iter().map(|f| f.as_ref())).mul_scalar(&self.coeff)
    }
}

#[derive(Serialize, Deserialize)]
struct KronRepr {
    coeff: PhasedScalar,
    factors: Vec<ExactMatrix>,
}

impl Serialize for KronMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KronRepr { coeff: self.coeff.clone(), factors: self.factors.iter().map(|f| (**f).clone()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KronMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<KronMatrix, D::Error> {
        let r = KronRepr::deserialize(d)?;
        if r.factors.is_empty() {
            return Err(serde::de::Error::custom("Kronecker product needs at least one factor"));
        }
        Ok(KronMatrix::new(r.coeff, r.factors))
    }
}

/// The operations a projective representation needs from its matrices, shared
/// by dense matrices and Kronecker factor form.
pub trait Operator: Clone + Send + Sync {
    fn dim(&self) -> usize;
    fn compose(&self, other: &Self) -> Result<Self>;
    fn trace(&self) -> Result<PhasedScalar>;
    fn adjoint(&self) -> Self;
    /// `Some(c)` with `self = c * other`.
    fn ratio_to(&self, other: &Self) -> Option<PhasedScalar>;
    fn as_scalar(&self) -> Option<PhasedScalar>;
    fn to_dense(&self) -> ExactMatrix;
    fn scaled(&self, c: &PhasedScalar) -> Self;
    /// `Some(c)` with `A A^dagger = c I`.
    fn gram(&self) -> Option<PhasedScalar>;
}

impl Operator for ExactMatrix {
    fn dim(&self) -> usize {
        self.rows
    }
    fn compose(&self, other: &Self) -> Result<Self> {
        self.matmul(other)
    }
    fn trace(&self) -> Result<PhasedScalar> {
        ExactMatrix::trace(self)
    }
    fn adjoint(&self) -> Self {
        self.dagger()
    }
    fn ratio_to(&self, other: &Self) -> Option<PhasedScalar> {
        self.ratio(other)
    }
    fn as_scalar(&self) -> Option<PhasedScalar> {
        ExactMatrix::as_scalar(self)
    }
    fn to_dense(&self) -> ExactMatrix {
        self.clone()
    }
    fn scaled(&self, c: &PhasedScalar) -> Self {
        self.mul_scalar(c)
    }
    fn gram(&self) -> Option<PhasedScalar> {
        self.gram_scalar()
    }
}

impl Operator for KronMatrix {
    fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.rows).product()
    }
    fn compose(&self, other: &Self) -> Result<Self> {
        if self.factors.len() != other.factors.len() {
            return Err(Error::Dimension("Kronecker factor counts differ".into()));
        }
        let factors =
            self.factors.iter().zip(&other.factors).map(|(a, b)| Ok(Arc::new(a.matmul(b)?))).collect::<Result<Vec<_>>>()?;
        Ok(KronMatrix { coeff: self.coeff.mul(&other.coeff), factors })
    }
    fn trace(&self) -> Result<PhasedScalar> {
        let mut t = self.coeff.clone();
        for f in &self.factors {
            if t.is_zero() {
                break;
            }
            t = t.mul(&f.trace()?);
        }
        Ok(t)
    }
    fn adjoint(&self) -> Self {
        KronMatrix { coeff: self.coeff.conj(), factors: self.factors.iter().map(|f| Arc::new(f.dagger())).collect() }
    }
    fn ratio_to(&self, other: &Self) -> Option<PhasedScalar> {
        if self.factors.len() != other.factors.len() {
            return None;
        }
        // A nonzero tensor product is proportional to another one iff the
        // factors are pairwise proportional.
        let mut c = self.coeff.div(&other.coeff).ok()?;
        for (a, b) in self.factors.iter().zip(&other.factors) {
            c = c.mul(&a.ratio(b)?);
        }
        Some(c)
    }
    fn as_scalar(&self) -> Option<PhasedScalar> {
        let mut c = self.coeff.clone();
        for f in &self.factors {
            c = c.mul(&f.as_scalar()?);
        }
        Some(c)
    }
    fn to_dense(&self) -> ExactMatrix {
        self.dense()
    }
    fn scaled(&self, c: &PhasedScalar) -> Self {
        KronMatrix { coeff: self.coeff.mul(c), factors: self.factors.clone() }
    }
    fn gram(&self) -> Option<PhasedScalar> {
        let mut c = self.coeff.mul(&self.coeff.conj());
        for f in &self.factors {
            c = c.mul(&f.gram_scalar()?);
        }
        Some(c)
    }
}

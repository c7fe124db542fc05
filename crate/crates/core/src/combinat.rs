//! Latin squares and complex Hadamard matrices.

use serde::{Deserialize, Serialize};

use crate::cyclo::{PhasedScalar, Rational};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;

/// A `d x d` array over `{0, ..., d-1}` with every symbol once per row and column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatinSquare {
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    /// Validates and wraps a candidate square.
    pub fn new(cells: Vec<Vec<usize>>) -> Result<LatinSquare> {
        let raw: Vec<Vec<i64>> = cells.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        let check = validate_latin(&raw)?;
        match check.violation {
            None => Ok(LatinSquare { cells }),
            Some(v) => Err(Error::Invalid(format!("not a Latin square: {v}"))),
        }
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row][col]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Applies a permutation to the rows; the result is again Latin.
    pub fn permute_rows(&self, perm: &[usize]) -> LatinSquare {
        LatinSquare { cells: perm.iter().map(|&r| self.cells[r].clone()).collect() }
    }
}

impl<'de> Deserialize<'de> for LatinSquare {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<LatinSquare, D::Error> {
        let cells = Vec::<Vec<usize>>::deserialize(d)?;
        LatinSquare::new(cells).map_err(serde::de::Error::custom)
    }
}

/// `L(i, j) = (j - i) mod d`.
pub fn cyclic_latin(d: usize) -> LatinSquare {
    assert!(d >= 1, "Latin square order must be positive");
    LatinSquare { cells: (0..d).map(|i| (0..d).map(|j| (j + d - i) % d).collect()).collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

/// A symbol that occurs twice in one row or column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatinViolation {
    pub line: Line,
    pub index: usize,
    pub symbol: usize,
}

impl std::fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let line = match self.line {
            Line::Row => "row",
            Line::Column => "column",
        };
        write!(f, "{line} {} repeats symbol {}", self.index, self.symbol)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatinCheck {
    pub valid: bool,
    pub violation: Option<LatinViolation>,
}

/// Checks the Latin property. Non-square input and out-of-range cells are
/// errors; a duplicated symbol is reported as a violation witness.
pub fn validate_latin(cells: &[Vec<i64>]) -> Result<LatinCheck> {
    let d = cells.len();
    if d == 0 {
        return Err(Error::Invalid("empty Latin square".into()));
    }
    for (i, row) in cells.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Dimension(format!("row {i} has {} cells, expected {d}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v < 0 || v >= d as i64) {
            return Err(Error::Invalid(format!("cell value {v} in row {i} is outside 0..{d}")));
        }
    }
    let find_dup = |line: Line, get: &dyn Fn(usize, usize) -> usize| {
        for a in 0..d {
            let mut seen = vec![false; d];
            for b in 0..d {
                let s = get(a, b);
                if seen[s] {
                    return Some(LatinViolation { line, index: a, symbol: s });
                }
                seen[s] = true;
            }
        }
        None
    };
    let violation = find_dup(Line::Row, &|i, j| cells[i][j] as usize)
        .or_else(|| find_dup(Line::Column, &|j, i| cells[i][j] as usize));
    Ok(LatinCheck { valid: violation.is_none(), violation })
}

/// Unnormalised Fourier matrix `(zeta_d^(kl))`.
pub fn fourier_hadamard(d: usize) -> ExactMatrix {
    assert!(d >= 1, "Hadamard order must be positive");
    ExactMatrix::fourier(d)
}

/// The 4x4 complex Hadamard matrix with a free unit phase `t` in its lower
/// right block.
#[rustfmt::skip]
pub fn h_alpha(symbol: &str) -> ExactMatrix {
    let one = PhasedScalar::one;
    let m1 = || PhasedScalar::from_i64(-1);
    let t = PhasedScalar::symbol(symbol);
    ExactMatrix::from_entries(
        4,
        4,
        vec![
            one(), one(), one(), one(),
            one(), one(), m1(), m1(),
            one(), m1(), t.clone(), t.neg(),
            one(), m1(), t.neg(), t,
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HadamardCheck {
    pub valid: bool,
    /// First entry that is not of unit modulus.
    pub non_unit_entry: Option<(usize, usize)>,
    pub gram_is_d_identity: bool,
}

/// Unit-modulus entries and `H^dagger H = d I`, both decided exactly.
pub fn validate_hadamard(h: &ExactMatrix) -> Result<HadamardCheck> {
    if !h.is_square() {
        return Err(Error::Dimension("Hadamard matrix must be square".into()));
    }
    let d = h.rows();
    let mut non_unit_entry = None;
    'outer: for i in 0..d {
        for j in 0..d {
            if !h.value(i, j).is_unit_modulus() {
                non_unit_entry = Some((i, j));
                break 'outer;
            }
        }
    }
    let gram_is_d_identity = h.is_scaled_unitary() == Some(Rational::from_integer((d as i64).into()));
    Ok(HadamardCheck { valid: non_unit_entry.is_none() && gram_is_d_identity, non_unit_entry, gram_is_d_identity })
}

/// A sequence `(H^(0), ..., H^(d-1))` of complex Hadamard matrices of order `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HadamardSequence {
    mats: Vec<ExactMatrix>,
}

impl HadamardSequence {
    pub fn new(mats: Vec<ExactMatrix>) -> Result<HadamardSequence> {
        let d = mats.len();
        if d == 0 {
            return Err(Error::Invalid("empty Hadamard sequence".into()));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::Dimension(format!("Hadamard member {i} is not {d}x{d}")));
            }
            let check = validate_hadamard(m)?;
            if !check.valid {
                return Err(Error::Invalid(format!("member {i} is not a complex Hadamard matrix")));
            }
        }
        Ok(HadamardSequence { mats })
    }

    /// `d` copies of one matrix.
    pub fn constant(h: ExactMatrix) -> Result<HadamardSequence> {
        let d = h.rows();
        HadamardSequence::new(vec![h; d])
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn get(&self, j: usize) -> &ExactMatrix {
        &self.mats[j]
    }
}

impl<'de> Deserialize<'de> for HadamardSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<HadamardSequence, D::Error> {
        let mats = Vec::<ExactMatrix>::deserialize(d)?;
        HadamardSequence::new(mats).map_err(serde::de::Error::custom)
    }
}

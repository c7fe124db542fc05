use std::collections::HashMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use ueb_core::groups::{Cyclic, DirectProduct, GroupDescriptor};
use ueb_core::{
    cyclic_latin, fourier_hadamard, h_alpha, validate_latin, ExactMatrix, HadamardSequence, LatinSquare,
    ProjectiveRep,
};

use crate::report::Artifact;

/// A list of square matrices with optional metadata. Unitary error bases,
/// nice bases and induced representations all use this layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Index group of a nice basis: `pauli:d` or `heisenberg:d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub d: usize,
    /// Subgroup index of an induced representation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub members: Vec<ExactMatrix>,
    #[serde(default)]
    pub labels: Vec<Value>,
}

impl MatrixFile {
    pub fn check_square(&self) -> anyhow::Result<()> {
        if let Some(i) = self.members.iter().position(|m| m.rows() != self.d || m.cols() != self.d) {
            bail!("member {i} is not {0}x{0}", self.d);
        }
        if !self.labels.is_empty() && self.labels.len() != self.members.len() {
            bail!("{} labels for {} members", self.labels.len(), self.members.len());
        }
        Ok(())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<(T, Artifact)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok((value, Artifact::new("input", path, &bytes)))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<Artifact> {
    let mut bytes = serde_json::to_vec(value)?;
    bytes.push(b'\n');
    fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(Artifact::new("output", path, &bytes))
}

pub fn read_matrix_file(path: &Path) -> anyhow::Result<(MatrixFile, Artifact)> {
    let (file, art): (MatrixFile, _) = read_json(path)?;
    file.check_square()?;
    Ok((file, art))
}

/// Parses `kind:n`.
pub fn parse_param(spec: &str, kind: &str) -> Option<usize> {
    spec.strip_prefix(kind)?.strip_prefix(':')?.trim().parse().ok()
}

pub fn latin_from_spec(spec: &str) -> anyhow::Result<(LatinSquare, Option<Artifact>)> {
    if let Some(d) = parse_param(spec, "cyclic") {
        if d == 0 {
            bail!("Latin square order must be positive");
        }
        return Ok((cyclic_latin(d), None));
    }
    let (cells, art): (Vec<Vec<i64>>, _) = read_json(Path::new(spec))?;
    let check = validate_latin(&cells)?;
    if !check.valid {
        bail!("{spec} is not a Latin square");
    }
    let cells = cells.into_iter().map(|r| r.into_iter().map(|v| v as usize).collect()).collect();
    Ok((LatinSquare::new(cells)?, Some(art)))
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    Many(Vec<ExactMatrix>),
    One(ExactMatrix),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<ExactMatrix> {
        match self {
            OneOrMany::Many(v) => v,
            OneOrMany::One(m) => vec![m],
        }
    }
}

/// `fourier:d`, `halpha` or `halpha:<symbol>`, or a JSON file holding one
/// matrix or a list of them. A single matrix is repeated `d` times.
pub fn hadamard_from_spec(spec: &str, d: usize) -> anyhow::Result<(HadamardSequence, Option<Artifact>)> {
    if let Some(n) = parse_param(spec, "fourier") {
        return Ok((HadamardSequence::constant(fourier_hadamard(n))?, None));
    }
    if spec == "halpha" {
        return Ok((HadamardSequence::constant(h_alpha("t"))?, None));
    }
    if let Some(sym) = spec.strip_prefix("halpha:") {
        if sym.is_empty() || !sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            bail!("bad phase symbol {sym:?}");
        }
        return Ok((HadamardSequence::constant(h_alpha(sym))?, None));
    }
    let (mats, art): (OneOrMany, _) = read_json(Path::new(spec))?;
    let mut mats = mats.into_vec();
    if mats.len() == 1 && d > 1 {
        mats = vec![mats[0].clone(); d];
    }
    Ok((HadamardSequence::new(mats)?, Some(art)))
}

/// Index groups a nice basis file may name. Both are `Z_d x Z_d` as
/// abstract groups; they differ in how members are labelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexGroup {
    Pauli(usize),
    Heisenberg(usize),
}

impl IndexGroup {
    pub fn parse(s: &str) -> anyhow::Result<IndexGroup> {
        if let Some(d) = parse_param(s, "pauli") {
            if d == 0 {
                bail!("pauli dimension must be positive");
            }
            return Ok(IndexGroup::Pauli(d));
        }
        match s.parse::<GroupDescriptor>()? {
            GroupDescriptor::Heisenberg(d) => Ok(IndexGroup::Heisenberg(d as usize)),
            GroupDescriptor::Triple { .. } => {
                bail!("the index group {s} is too large for a dense basis file; use the counterexample165 commands")
            }
            other => bail!("{other} is not the index group of a nice basis"),
        }
    }

    pub fn d(&self) -> usize {
        match *self {
            IndexGroup::Pauli(d) | IndexGroup::Heisenberg(d) => d,
        }
    }

    pub fn name(&self) -> String {
        match self {
            IndexGroup::Pauli(d) => format!("pauli:{d}"),
            IndexGroup::Heisenberg(d) => format!("heisenberg:{d}"),
        }
    }
}

pub type IndexRep = ProjectiveRep<(u32, u32), ExactMatrix>;

/// Rebuilds the projective representation recorded in a nice basis file.
/// Labels `[a, b]` are elements of `Z_d x Z_d`.
pub fn rep_from_file(file: &MatrixFile) -> anyhow::Result<(IndexGroup, IndexRep)> {
    let group = IndexGroup::parse(file.group.as_deref().ok_or_else(|| anyhow!("nice basis file has no group"))?)?;
    let d = group.d();
    if file.d != d {
        bail!("file dimension {} does not match group {}", file.d, group.name());
    }
    if file.labels.len() != file.members.len() {
        bail!("nice basis file needs one label per member");
    }
    let mut table = HashMap::new();
    for (label, m) in file.labels.iter().zip(&file.members) {
        let pair: (u32, u32) = serde_json::from_value(label.clone()).with_context(|| format!("label {label}"))?;
        if pair.0 as usize >= d || pair.1 as usize >= d {
            bail!("label {label} out of range for {}", group.name());
        }
        if table.insert(pair, m.clone()).is_some() {
            bail!("duplicate label {label}");
        }
    }
    if table.len() != d * d {
        bail!("expected {} members, got {}", d * d, table.len());
    }
    let n = d as u32;
    let idx = DirectProduct { a: Cyclic { n }, b: Cyclic { n } };
    let rep = ProjectiveRep::from_group(idx, d, move |e| table[e].clone())?;
    Ok((group, rep))
}

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use serde::Serialize;
use serde_json::{json, Value};
use ueb_core::counterexample::{export_bundle, trace_sweep, CounterexampleOptions};
use ueb_core::groups::GroupDescriptor;
use ueb_core::induce::SparsityReport;
use ueb_core::nice::{cocycle_identity_violation, extract_full_cocycle, random_triples};
use ueb_core::{
    build_g165, heisenberg_nice_rep, induce_character, induce_representation, monomiality_report, pauli_rep,
    shift_and_multiply, sparsity_check, validate_hadamard, validate_latin, verify_counterexample, verify_nice,
    verify_ueb, wickedness_witness, ExactMatrix, FiniteGroup, Heisenberg, HeisenbergElement, PairPlan,
    PhasedScalar, Rational,
};

use crate::files::{
    hadamard_from_spec, latin_from_spec, read_json, read_matrix_file, rep_from_file, write_json, IndexGroup,
    MatrixFile, OneOrMany,
};
use crate::report::RunReport;
use crate::{AnalyzeArgs, AnalyzeKind, ConstructArgs, VerifyArgs, VerifyKind};

/// Index groups up to this order get the cocycle identity on every triple.
const ALL_TRIPLES_MAX_ORDER: usize = 100;
const SAMPLED_TRIPLES: usize = 10_000;

fn require_input(input: &Option<PathBuf>, what: &str) -> anyhow::Result<PathBuf> {
    input.clone().ok_or_else(|| anyhow!("{what} needs an input file"))
}

fn ueb_check(report: &mut RunReport, file: &MatrixFile) -> anyhow::Result<()> {
    report.check("ueb", || {
        let r = verify_ueb(file.d, &file.members)?;
        Ok((r.valid, r))
    })
}

fn nice_check(report: &mut RunReport, file: &MatrixFile) -> anyhow::Result<()> {
    let (_, rep) = rep_from_file(file)?;
    report.check("nice", || {
        let r = verify_nice(&rep, PairPlan::All)?;
        Ok((r.valid, r))
    })
}

fn emit_basis(report: &mut RunReport, file: &MatrixFile, out: &Option<PathBuf>) -> anyhow::Result<()> {
    if let Some(path) = out {
        report.artifact(write_json(path, file)?);
    }
    Ok(())
}

pub fn construct(args: &ConstructArgs, report: &mut RunReport) -> anyhow::Result<()> {
    let kind = args.kind.as_str();
    if let Some(d) = crate::files::parse_param(kind, "pauli") {
        let file = pauli_file(d)?;
        ueb_check(report, &file)?;
        nice_check(report, &file)?;
        return emit_basis(report, &file, &args.out);
    }
    match kind {
        "nice" => {
            let spec = args.group.as_deref().ok_or_else(|| anyhow!("construct nice needs --group"))?;
            let file = match IndexGroup::parse(spec)? {
                IndexGroup::Pauli(d) => pauli_file(d)?,
                IndexGroup::Heisenberg(d) => heisenberg_file(d)?,
            };
            nice_check(report, &file)?;
            emit_basis(report, &file, &args.out)
        }
        "sam" => {
            let latin = args.latin.as_deref().or(args.params.first().map(String::as_str));
            let hadamard = args.hadamard.as_deref().or(args.params.get(1).map(String::as_str));
            let (latin, hadamard) = match (latin, hadamard) {
                (Some(l), Some(h)) => (l, h),
                _ => bail!("construct sam needs a Latin square and a Hadamard spec"),
            };
            let (l, la) = latin_from_spec(latin)?;
            let (h, ha) = hadamard_from_spec(hadamard, l.order())?;
            for a in [la, ha].into_iter().flatten() {
                report.artifact(a);
            }
            let b = shift_and_multiply(&l, &h)?;
            let file = MatrixFile {
                kind: Some("shift_and_multiply".into()),
                group: None,
                d: b.d,
                index: None,
                members: b.members,
                labels: b.labels,
            };
            ueb_check(report, &file)?;
            emit_basis(report, &file, &args.out)
        }
        "counterexample165" => {
            let g = build_g165()?;
            report.check("conjugators", || {
                let s = vec![g.conj_p.summary(), g.conj_q.summary()];
                Ok((s.iter().all(|c| c.accepted), s))
            })?;
            report.check("trace_sweep", || {
                let rep = g.nice_rep()?;
                let sweep = trace_sweep(&g, rep.elements());
                Ok((sweep.nonzero == 0, sweep))
            })?;
            if let Some(path) = args.export.as_ref().or(args.out.as_ref()) {
                let bundle = export_bundle(&g, !args.factors_only);
                report.artifact(write_json(path, &bundle)?);
            }
            Ok(())
        }
        other => bail!("unknown construction {other:?}; expected pauli:d, nice, sam or counterexample165"),
    }
}

fn pauli_file(d: usize) -> anyhow::Result<MatrixFile> {
    let rep = pauli_rep(d)?;
    Ok(MatrixFile {
        kind: Some("nice".into()),
        group: Some(IndexGroup::Pauli(d).name()),
        d,
        index: None,
        members: rep.members(),
        labels: rep.elements().iter().map(|(i, j)| json!([i, j])).collect(),
    })
}

fn heisenberg_file(d: usize) -> anyhow::Result<MatrixFile> {
    let rep = heisenberg_nice_rep(d as u32)?;
    Ok(MatrixFile {
        kind: Some("nice".into()),
        group: Some(IndexGroup::Heisenberg(d).name()),
        d,
        index: None,
        members: rep.members(),
        labels: rep.elements().iter().map(|g| json!([g.x, g.y])).collect(),
    })
}

pub fn verify(args: &VerifyArgs, seed: u64, report: &mut RunReport) -> anyhow::Result<()> {
    match args.kind {
        VerifyKind::Ueb => {
            let (file, art) = read_matrix_file(&require_input(&args.input, "verify ueb")?)?;
            report.artifact(art);
            ueb_check(report, &file)
        }
        VerifyKind::Nice => {
            let (file, art) = read_matrix_file(&require_input(&args.input, "verify nice")?)?;
            report.artifact(art);
            nice_check(report, &file)
        }
        VerifyKind::Hadamard => {
            let (mats, art): (OneOrMany, _) = read_json(&require_input(&args.input, "verify hadamard")?)?;
            report.artifact(art);
            for (i, m) in mats.into_vec().iter().enumerate() {
                report.check(&format!("hadamard[{i}]"), || {
                    let r = validate_hadamard(m)?;
                    Ok((r.valid, r))
                })?;
            }
            Ok(())
        }
        VerifyKind::Latin => {
            let (cells, art): (Vec<Vec<i64>>, _) = read_json(&require_input(&args.input, "verify latin")?)?;
            report.artifact(art);
            report.check("latin", || {
                let r = validate_latin(&cells)?;
                Ok((r.valid, r))
            })
        }
        VerifyKind::Counterexample165 => {
            let g = build_g165()?;
            let opts = CounterexampleOptions { seed, ..CounterexampleOptions::default() };
            report.check("counterexample165", || {
                let r = verify_counterexample(&g, opts)?;
                Ok((r.valid, r))
            })
        }
    }
}

pub fn analyze(args: &AnalyzeArgs, seed: u64, report: &mut RunReport) -> anyhow::Result<()> {
    if args.kind == AnalyzeKind::Induce {
        return induce(args, report);
    }
    let path = require_input(&args.input, &format!("analyze {:?}", args.kind).to_lowercase())?;
    let (file, art) = read_matrix_file(&path)?;
    report.artifact(art);
    match args.kind {
        AnalyzeKind::Monomial => report.check("monomial", || Ok((true, monomiality_report(&file.members)?))),
        AnalyzeKind::Sparsity => report.check("sparsity", || Ok(sparsity(&file))),
        AnalyzeKind::Wickedness => report.check("wickedness", || {
            let w = wickedness_witness(&file.members)?;
            Ok((true, json!({ "wicked": w.is_some(), "witness": w })))
        }),
        AnalyzeKind::Cocycle => cocycle(&file, seed, report),
        AnalyzeKind::Induce => unreachable!(),
    }
}

#[derive(Serialize)]
struct SparsitySummary {
    matrices: usize,
    min_zero_fraction: String,
    at_least_half: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<SparsityReport>,
}

fn sparsity(file: &MatrixFile) -> (bool, SparsitySummary) {
    let min = sparsity_check(&file.members);
    let bound = file.index.filter(|&i| i > 0).map(|index| {
        let bound = Rational::from_integer(1.into()) - Rational::new(1.into(), (index as i64).into());
        SparsityReport { meets_bound: min >= bound, min_zero_fraction: min.clone(), bound, index }
    });
    let pass = bound.as_ref().map_or(true, |b| b.meets_bound);
    let half = Rational::new(1.into(), 2.into());
    let summary = SparsitySummary {
        matrices: file.members.len(),
        min_zero_fraction: min.to_string(),
        at_least_half: min >= half,
        bound,
    };
    (pass, summary)
}

fn cocycle(file: &MatrixFile, seed: u64, report: &mut RunReport) -> anyhow::Result<()> {
    let (group, rep) = rep_from_file(file)?;
    report.check("cocycle", || {
        let c = extract_full_cocycle(&rep)?;
        let n = rep.order();
        let (triples, plan) = if n <= ALL_TRIPLES_MAX_ORDER {
            let els = rep.elements();
            let all: Vec<_> = els
                .iter()
                .flat_map(|a| els.iter().flat_map(move |b| els.iter().map(move |c| (*a, *b, *c))))
                .collect();
            (all, json!({ "mode": "all" }))
        } else {
            (random_triples(&rep, SAMPLED_TRIPLES, seed), json!({ "mode": "sampled", "triples": SAMPLED_TRIPLES, "seed": seed }))
        };
        let violation = cocycle_identity_violation(&rep, &triples)?;
        let result = json!({
            "group": group.name(),
            "order": n,
            "trivial": c.is_trivial(),
            "identity_plan": plan,
            "identity_triples": triples.len(),
            "identity_violation": violation,
            "values": c.entries(),
        });
        Ok((violation.is_none(), result))
    })
}

/// `trivial`, `zeta^z` or `zeta^<k>z`, read as `g -> zeta_d^(k z)`.
fn character_exponent(spec: &str) -> anyhow::Result<i64> {
    if spec == "trivial" {
        return Ok(0);
    }
    let k = spec
        .strip_prefix("zeta^")
        .and_then(|r| r.strip_suffix('z'))
        .ok_or_else(|| anyhow!("unknown character {spec:?}; expected trivial, zeta^z or zeta^<k>z"))?;
    if k.is_empty() {
        Ok(1)
    } else {
        k.parse().with_context(|| format!("bad character exponent in {spec:?}"))
    }
}

fn induce(args: &AnalyzeArgs, report: &mut RunReport) -> anyhow::Result<()> {
    let spec = args.group.as_deref().ok_or_else(|| anyhow!("analyze induce needs --group"))?;
    let d = match spec.parse::<GroupDescriptor>()? {
        GroupDescriptor::Heisenberg(d) => d,
        other => bail!("induction is supported from subgroups of heisenberg:d, not {other}"),
    };
    let h = Heisenberg::new(d);
    let k: Vec<HeisenbergElement> = match args.from.as_str() {
        "center" => h.center(),
        "trivial" => vec![h.identity()],
        "whole" => h.elements().collect(),
        other => bail!("unknown subgroup {other:?}; expected center, trivial or whole"),
    };
    let exp = character_exponent(&args.character)?;
    let psi = move |g: &HeisenbergElement| PhasedScalar::zeta(d, exp * g.z as i64);
    if let Some((a, b)) =
        k.iter().flat_map(|a| k.iter().map(move |b| (a, b))).find(|(a, b)| psi(&h.compose(a, b)) != psi(a).mul(&psi(b)))
    {
        bail!("{} is not a character of the subgroup: fails on ({a:?}, {b:?})", args.character);
    }

    let rep = induce_representation(&h, &k, 1, |g| ExactMatrix::diag(vec![psi(g)]))?;
    let label = |g: &HeisenbergElement| json!([g.x, g.y, g.z]);
    report.check("induce", || {
        let chi = induce_character(&h, &k, psi)?;
        let traces = rep.character()?;
        let class_function = chi.is_class_function(&h);
        let matches = traces == chi;
        let block_monomial = rep.is_block_monomial();
        let sparsity = rep.sparsity();
        let pass = class_function && matches && block_monomial && sparsity.meets_bound;
        let character: Vec<Value> =
            chi.values.iter().map(|(g, v)| json!({ "element": label(g), "value": v })).collect();
        let result = json!({
            "group": spec,
            "subgroup": args.from,
            "subgroup_order": k.len(),
            "character": args.character,
            "index": rep.index(),
            "dim": rep.dim(),
            "block_monomial": block_monomial,
            "class_function": class_function,
            "character_matches_trace": matches,
            "sparsity": sparsity,
            "induced_character": character,
        });
        Ok((pass, result))
    })?;
    if let Some(path) = &args.out {
        let file = MatrixFile {
            kind: Some("induced".into()),
            group: None,
            d: rep.dim(),
            index: Some(rep.index()),
            members: rep.matrices.values().cloned().collect(),
            labels: rep.matrices.keys().map(label).collect(),
        };
        report.artifact(write_json(path, &file)?);
    }
    Ok(())
}

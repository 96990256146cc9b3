//! The individual commands. Each returns the rendered output and whether
//! every check passed; input problems are returned as errors.

use super::{input_error, render, Format, RunConfig, SignQuery, VerifyKind};
use crate::ainf::{
    build_formal_category, check_ainf_relations_with, check_functor_equation_with, cohomology_functor_check,
    cohomology_ranks, dg_to_ainf, hom_complex, minimal_model, to_formal, AInfCategory, CheckConfig, FormalCountData,
    FunctorFile,
};
use crate::algebra_core::cohomology;
use crate::error::{Error, Result};
use crate::orientations::{shrub_break_case, shrub_collapse_case, sign_twist, stasheff_case, verify_signs};
use crate::plumbing::{verify_dg_axioms, PlumbingInput};
use crate::polytopes::{
    cap_types, enumerate_tree_types, mushroom_dim, mushroom_faces, shrub_cells, shrub_faces, trivalent_trees,
    verify_polytopes, walls,
};
use crate::report::Report;
use crate::Int;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Rendered command output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    /// Text to write.
    pub text: String,
    /// Whether every check passed.
    pub all_pass: bool,
}

impl Output {
    fn report(report: &Report, format: Format) -> Self {
        Output {
            text: render(report, format),
            all_pass: report.all_pass(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| {
        Error::Parse(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn load_spec(path: &Path) -> Result<PlumbingInput> {
    PlumbingInput::from_json(&parse_json(path)?, path.parent())
}

fn is_spec(v: &Value) -> bool {
    v.get("q1").is_some()
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// An A∞ category from either a plumbing spec or a count file.
fn load_ainf(path: &Path) -> Result<AInfCategory> {
    let v = parse_json(path)?;
    if is_spec(&v) {
        let input = PlumbingInput::from_json(&v, path.parent())?;
        dg_to_ainf(&input.build()?, input.dimension() as i64)
    } else {
        let data: FormalCountData =
            serde_json::from_value(v).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        build_formal_category(&data)
    }
}

fn check_config(cfg: &RunConfig, default: usize) -> CheckConfig {
    CheckConfig::new(cfg.d_max_or(default)).with_seed(cfg.seed)
}

fn ranks_json(ranks: &[(i64, usize)]) -> Value {
    Value::Object(ranks.iter().map(|(p, r)| (p.to_string(), json!(r))).collect())
}

fn torsion_json(t: &[Int]) -> Value {
    t.iter().map(|x| json!(x.to_string())).collect()
}

/// `build SPEC`: hom ranks per degree, cohomology of every hom complex and
/// the DG axiom verification.
pub fn cmd_build(spec: &Path, cfg: &RunConfig) -> Result<Output> {
    let cat = load_spec(spec)?.build()?;
    let mut report = Report::new();
    for (&(i, j), c) in &cat.homs {
        let params = json!({"source": cat.objects[i], "target": cat.objects[j]});
        report.push(
            "build.hom_ranks",
            params.clone(),
            Value::Null,
            ranks_json(&c.module().ranks()),
            true,
        );
        match cohomology(c) {
            Ok(h) => {
                let groups: Vec<Value> = h
                    .iter()
                    .map(|g| json!({"degree": g.degree, "rank": g.rank, "torsion": torsion_json(&g.torsion)}))
                    .collect();
                report.push("build.cohomology", params, Value::Null, Value::Array(groups), true);
            }
            Err(e) => report.push(
                "build.cohomology",
                params,
                json!("a complex"),
                json!(e.to_string()),
                false,
            ),
        }
    }
    report.extend(verify_dg_axioms(&cat));
    Ok(Output::report(&report, cfg.format))
}

/// `verify KIND [INPUT]`.
pub fn cmd_verify(kind: VerifyKind, input: Option<&Path>, samples: usize, cfg: &RunConfig) -> Result<Output> {
    let need = || input.ok_or_else(|| input_error(format!("verify {kind:?} needs an input file").to_lowercase()));
    let report = match kind {
        VerifyKind::Dg => verify_dg_axioms(&load_spec(need()?)?.build()?),
        VerifyKind::Ainf => check_ainf_relations_with(&load_ainf(need()?)?, &check_config(cfg, 4)),
        VerifyKind::Functor => {
            let file = FunctorFile::from_json(&read(need()?)?)?;
            let f = file.build()?;
            let mut r = check_functor_equation_with(&f, &check_config(cfg, 4));
            r.extend(cohomology_functor_check(&f));
            r
        }
        VerifyKind::Signs => verify_signs(cfg.d_max_or(6), samples, cfg.seed)?,
        VerifyKind::Polytopes => verify_polytopes(cfg.d_max_or(6), cfg.seed),
    };
    Ok(Output::report(&report, cfg.format))
}

/// Keep only the generators and operations of one object.
fn restrict(data: &FormalCountData, object: &str) -> Result<FormalCountData> {
    if !data.objects.iter().any(|o| o == object) {
        return Err(input_error(format!(
            "unknown object {object}; objects are {:?}",
            data.objects
        )));
    }
    let generators: Vec<_> = data
        .generators
        .iter()
        .filter(|g| g.source == object && g.target == object)
        .cloned()
        .collect();
    let keep: std::collections::BTreeSet<&str> = generators.iter().map(|g| g.id.as_str()).collect();
    let counts = data
        .counts
        .iter()
        .filter(|c| keep.contains(c.out.as_str()) && c.inputs.iter().all(|i| keep.contains(i.as_str())))
        .cloned()
        .collect();
    Ok(FormalCountData {
        objects: vec![object.to_string()],
        generators,
        counts,
        ..data.clone()
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

/// `minimal-model INPUT`: the minimal model, checks that it is minimal with
/// the cohomology ranks (by Smith normal form) of the input, that the
/// inclusion is a quasi-isomorphism and an A∞ functor, and that the emitted
/// file re-imports to the same category satisfying the A∞ relations.
pub fn cmd_minimal_model(
    input: &Path,
    object: Option<&str>,
    modulus: Option<u64>,
    emit: Option<&Path>,
    cfg: &RunConfig,
) -> Result<Output> {
    let mut data = to_formal(&load_ainf(input)?);
    if let Some(o) = object {
        data = restrict(&data, o)?;
    }
    if let Some(p) = modulus {
        if !is_prime(p) {
            return Err(input_error(format!("modulus {p} is not a prime")));
        }
        data.modulus = Some(Int::from(p));
    }
    let cat = build_formal_category(&data)?;
    let d_max = cfg.d_max_or(4);
    let (min, incl) = minimal_model(&cat, d_max)?;
    let mut report = Report::new();
    for x in 0..cat.objects.len() {
        for y in 0..cat.objects.len() {
            let (c, _) = hom_complex(&cat, x, y);
            if c.module().is_empty() {
                continue;
            }
            let want: BTreeMap<i64, usize> = cohomology_ranks(&c, &cat.modulus)
                .into_iter()
                .filter(|(_, r, _)| *r > 0)
                .map(|(p, r, _)| (p, r))
                .collect();
            let mut got: BTreeMap<i64, usize> = BTreeMap::new();
            for g in min.hom_generators(x, y) {
                *got.entry(min.degree(g)).or_default() += 1;
            }
            let as_json =
                |m: &BTreeMap<i64, usize>| Value::Object(m.iter().map(|(p, r)| (p.to_string(), json!(r))).collect());
            report.push_eq(
                "minimal_model.ranks",
                json!({"source": cat.objects[x], "target": cat.objects[y]}),
                as_json(&want),
                as_json(&got),
            );
            let d_vanishes = min
                .hom_generators(x, y)
                .iter()
                .all(|&g| min.mu_gen(&[g]).map_or(true, |v| v.is_empty()));
            report.push_eq(
                "minimal_model.zero_differential",
                json!({"source": cat.objects[x], "target": cat.objects[y]}),
                json!(true),
                json!(d_vanishes),
            );
        }
    }
    report.extend(cohomology_functor_check(&incl));
    report.extend(check_functor_equation_with(&incl, &check_config(cfg, 4)));
    let text = to_formal(&min).to_json();
    let again = build_formal_category(&FormalCountData::from_json(&text)?)?;
    report.push_eq(
        "minimal_model.reimport",
        json!({"d_max": d_max}),
        json!({"identical": true}),
        json!({"identical": to_formal(&again).to_json() == text}),
    );
    report.extend(check_ainf_relations_with(&again, &check_config(cfg, 4)));
    if let Some(path) = emit {
        write_file(path, &text)?;
    }
    Ok(Output::report(&report, cfg.format))
}

/// `polytopes enumerate`: stratum counts for `1 ≤ d ≤ d_max`.
pub fn cmd_polytopes_enumerate(cfg: &RunConfig) -> Result<Output> {
    let d_max = cfg.d_max_or(6);
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let (types, trivalent, wall_count) = if d >= 2 {
            (
                enumerate_tree_types(d)?.len(),
                trivalent_trees(d)?.len(),
                if d >= 3 { walls(d)?.len() } else { 0 },
            )
        } else {
            (1, 1, 0)
        };
        let faces = (d <= 5).then(|| mushroom_faces(d));
        let vertices = faces.as_ref().map(|f| f.values().filter(|&&dim| dim == 0).count());
        rows.push(json!({
            "d": d,
            "stasheff_types": types,
            "stasheff_trivalent": trivalent,
            "stasheff_walls": wall_count,
            "shrub_cells": shrub_cells(d).len(),
            "shrub_faces": shrub_faces(d).len(),
            "cap_types": cap_types(d).len(),
            "mushroom_dim": mushroom_dim(d),
            "mushroom_faces": faces.as_ref().map(|f| f.len()),
            "mushroom_vertices": vertices,
        }));
    }
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for row in &rows {
                let cells: Vec<String> = row
                    .as_object()
                    .expect("object")
                    .iter()
                    .map(|(k, v)| format!("{k}={}", if v.is_null() { "-".to_string() } else { v.to_string() }))
                    .collect();
                let _ = writeln!(s, "{}", cells.join(" "));
            }
            s
        }
    };
    Ok(Output { text, all_pass: true })
}

fn parse_groups(text: &str) -> Result<Vec<Vec<i64>>> {
    if text.trim().is_empty() {
        return Ok(vec![Vec::new()]);
    }
    text.split(';')
        .map(|g| {
            g.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|e| input_error(format!("bad degree {s:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

/// `signs check …`: one formula, with its first-principles comparison where
/// available.
pub fn cmd_signs_check(query: &SignQuery, cfg: &RunConfig) -> Result<Output> {
    let report = match query {
        SignQuery::Stasheff { d1, d2, k } => stasheff_case(*d1, *d2, *k)?,
        SignQuery::Break { parts } => shrub_break_case(parts)?,
        SignQuery::Collapse { d, k } => shrub_collapse_case(*d, *k)?,
        SignQuery::Twist { name, groups, n } => {
            let groups = parse_groups(groups)?;
            let odd = sign_twist(name, *n, &groups)?;
            let mut r = Report::new();
            r.push(
                "orientations.twist",
                json!({"name": name, "n": n, "groups": groups}),
                Value::Null,
                json!({"odd": odd}),
                true,
            );
            r
        }
    };
    Ok(Output::report(&report, cfg.format))
}

/// `formal import FILE`: build the category (applying the file's sign
/// twist), summarize it, check the A∞ relations, and optionally write the
/// raw-mode export.
pub fn cmd_formal_import(file: &Path, emit: Option<&Path>, cfg: &RunConfig) -> Result<Output> {
    let data = FormalCountData::from_json(&read(file)?)?;
    let cat = build_formal_category(&data)?;
    let mut per_arity: BTreeMap<usize, usize> = BTreeMap::new();
    for (&d, table) in &cat.mu {
        *per_arity.entry(d).or_default() += table.values().map(|v| v.len()).sum::<usize>();
    }
    let mut report = Report::new();
    report.push(
        "formal.import",
        json!({"mode": data.mode, "n": data.n}),
        Value::Null,
        json!({
            "objects": cat.objects.len(),
            "generators": cat.generators.len(),
            "terms": Value::Object(per_arity.iter().map(|(d, c)| (d.to_string(), json!(c))).collect()),
        }),
        true,
    );
    report.extend(check_ainf_relations_with(&cat, &check_config(cfg, 4)));
    if let Some(path) = emit {
        write_file(path, &to_formal(&cat).to_json())?;
    }
    Ok(Output::report(&report, cfg.format))
}

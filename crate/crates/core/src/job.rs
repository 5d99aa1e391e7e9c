//! Job documents and report assembly for the command-line front end.
//!
//! A job is a JSON document with `dimension`, `generators` (a list of matrices,
//! each a list of rows of expression strings) and an optional `character`.
//! Every report is built as a structured JSON value first; the text form is
//! rendered from that value.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classgroup::{self, ClassGroupError};
use crate::cyclo::{parse_cyclotomic, CycloError};
use crate::invariants::{
    check_congruence_lemma, check_h_membership, CharacterOfAb, GradingData, InvariantContext,
    InvariantError, SparsePolynomial,
};
use crate::matgrp::{
    CycMatrix, ElemId, FiniteGroup, FiniteMatrixGroup, GroupError, DEFAULT_MAX_SIZE,
};
use crate::mckay::{self, AgeTable, GaloisTwist, McKayError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analyze,
    Age,
    Invariant,
    Check,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    pub max_group_size: usize,
    /// Defaults to |G|.
    pub degree_bound: Option<u32>,
    pub twist: i64,
    pub format: OutputFormat,
}

impl Default for JobOptions {
    fn default() -> Self {
        Self {
            max_group_size: DEFAULT_MAX_SIZE,
            degree_bound: None,
            twist: 1,
            format: OutputFormat::Text,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub dimension: usize,
    pub generators: Vec<CycMatrix>,
    pub character: Option<Vec<i64>>,
    pub mode: Mode,
    pub options: JobOptions,
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("malformed job document: {0}")]
    Malformed(String),
    #[error("job has no generators")]
    NoGenerators,
    #[error("generator {generator}: {what} has {found} entries, expected {expected}")]
    Dimension {
        generator: usize,
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("generator {generator}, row {row}, column {column}: {source}")]
    Expression {
        generator: usize,
        row: usize,
        column: usize,
        source: CycloError,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDocument {
    dimension: usize,
    generators: Vec<Vec<Vec<Entry>>>,
    #[serde(default)]
    character: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Integer(i64),
}

/// Parses and validates a job document. Generator, row and column indices in
/// errors are 1-based.
pub fn parse_job(text: &str, mode: Mode, options: JobOptions) -> Result<JobSpec, JobError> {
    let doc: JobDocument =
        serde_json::from_str(text).map_err(|e| JobError::Malformed(e.to_string()))?;
    if doc.generators.is_empty() {
        return Err(JobError::NoGenerators);
    }
    let n = doc.dimension;
    if n == 0 {
        return Err(JobError::Malformed("dimension must be positive".into()));
    }
    let mut generators = Vec::with_capacity(doc.generators.len());
    for (gi, rows) in doc.generators.iter().enumerate() {
        if rows.len() != n {
            return Err(JobError::Dimension {
                generator: gi + 1,
                what: "matrix".into(),
                expected: n,
                found: rows.len(),
            });
        }
        let mut parsed = Vec::with_capacity(n);
        for (ri, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(JobError::Dimension {
                    generator: gi + 1,
                    what: format!("row {}", ri + 1),
                    expected: n,
                    found: row.len(),
                });
            }
            let mut out = Vec::with_capacity(n);
            for (ci, entry) in row.iter().enumerate() {
                let value = match entry {
                    Entry::Text(s) => parse_cyclotomic(s),
                    Entry::Integer(k) => Ok((*k).into()),
                };
                out.push(value.map_err(|source| JobError::Expression {
                    generator: gi + 1,
                    row: ri + 1,
                    column: ci + 1,
                    source,
                })?);
            }
            parsed.push(out);
        }
        generators.push(CycMatrix::from_rows(parsed)?);
    }
    Ok(JobSpec {
        dimension: n,
        generators,
        character: doc.character,
        mode,
        options,
    })
}

/// Structured result of a job; `success` is false when any check fails.
#[derive(Clone, Debug, PartialEq)]
pub struct JobReport {
    pub success: bool,
    pub value: Value,
}

impl JobReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.value).expect("report values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => render_text(&self.value),
        }
    }
}

pub fn run(job: &JobSpec) -> Result<JobReport, JobError> {
    let group = FiniteMatrixGroup::close(&job.generators, job.options.max_group_size)?;
    let twist = GaloisTwist(job.options.twist);
    let (success, body) = match job.mode {
        Mode::Analyze => analyze(&group, twist)?,
        Mode::Age => ages(&group, twist)?,
        Mode::Invariant => invariant(&group, job)?,
        Mode::Check => check(&group, job, twist)?,
        Mode::Sweep => sweep(&group)?,
    };
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "mode": job.mode,
        "dimension": job.dimension,
        "generators": job.generators.iter().map(CycMatrix::render_rows).collect::<Vec<_>>(),
        "group_order": group.order(),
        "success": success,
    });
    let map = value.as_object_mut().expect("object literal");
    if let Value::Object(body) = body {
        map.extend(body);
    }
    Ok(JobReport { success, value })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn matrix_value(group: &FiniteMatrixGroup, x: ElemId) -> Value {
    json!({ "id": x, "matrix": group.element(x).render_rows() })
}

fn analyze(group: &FiniteMatrixGroup, twist: GaloisTwist) -> Result<(bool, Value), JobError> {
    let table = AgeTable::new(group)?;
    let report = classgroup::terminalization_class_group(group, &table, twist)?;
    let ok = report.all_checks_pass();
    let reps: Vec<Value> = report
        .junior_representatives
        .iter()
        .map(|&x| matrix_value(group, x))
        .collect();
    let free: Vec<Value> = report
        .pushforward
        .free_images
        .iter()
        .map(|p| matrix_value(group, p.element))
        .collect();
    let torsion: Vec<Value> = report
        .pushforward
        .torsion_images
        .iter()
        .map(|p| matrix_value(group, p.element))
        .collect();
    Ok((
        ok,
        json!({
            "cl_x": report.render_cl_x(),
            "report": to_value(&report),
            "junior_representative_matrices": reps,
            "pushforward_free_matrices": free,
            "pushforward_torsion_matrices": torsion,
        }),
    ))
}

fn ages(group: &FiniteMatrixGroup, twist: GaloisTwist) -> Result<(bool, Value), JobError> {
    let table = AgeTable::new(group)?;
    let records = table.records(twist)?;
    let classes: Vec<Value> = group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let rep = class[0];
            json!({
                "class": i,
                "size": class.len(),
                "representative": matrix_value(group, rep),
                "record": to_value(&records[rep]),
            })
        })
        .collect();
    Ok((true, json!({ "twist": twist.0, "classes": classes })))
}

fn invariant_entry(
    ctx: &InvariantContext<'_>,
    chi: &CharacterOfAb,
    bound: u32,
) -> Result<(bool, Value, Option<SparsePolynomial>), JobError> {
    let f = ctx.relative_invariant(chi, bound)?;
    let v = json!({
        "character": chi.exponents,
        "polynomial": f.as_ref().map(SparsePolynomial::render),
        "degree": f.as_ref().and_then(SparsePolynomial::total_degree),
    });
    Ok((f.is_some(), v, f))
}

fn invariant(group: &FiniteMatrixGroup, job: &JobSpec) -> Result<(bool, Value), JobError> {
    let ctx = InvariantContext::new(group)?;
    let bound = job.options.degree_bound.unwrap_or(group.order() as u32);
    let characters = match &job.character {
        Some(c) => vec![ctx.ab.character(c)?],
        None => ctx.ab.characters(),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for chi in &characters {
        let (found, v, _) = invariant_entry(&ctx, chi, bound)?;
        ok &= found;
        rows.push(v);
    }
    Ok((
        ok,
        json!({
            "abelianization": to_value(&ctx.ab.structure()),
            "degree_bound": bound,
            "invariants": rows,
        }),
    ))
}

fn check(
    group: &FiniteMatrixGroup,
    job: &JobSpec,
    twist: GaloisTwist,
) -> Result<(bool, Value), JobError> {
    let table = AgeTable::new(group)?;
    let report = classgroup::terminalization_class_group(group, &table, twist)?;
    let sweep = mckay::galois_sweep(group, &table)?;
    let juniors = mckay::junior_classes(group, &table, twist)?;
    let grading = GradingData::new(group, &juniors, twist)?;
    let ctx = InvariantContext::new(group)?;
    let bound = job.options.degree_bound.unwrap_or(group.order() as u32);

    let mut checks: Vec<Value> = report.consistency.iter().map(to_value).collect();
    checks.push(json!({
        "name": "galois_sweep_consistent",
        "passed": sweep.consistent,
        "detail": format!("{} twists", sweep.rows.len()),
    }));

    let mut found = Vec::new();
    let mut lemma_rows = Vec::new();
    let mut all_lemmas = true;
    let characters = match &job.character {
        Some(c) => vec![ctx.ab.character(c)?],
        None => ctx.ab.characters(),
    };
    for chi in &characters {
        let (ok, mut v, f) = invariant_entry(&ctx, chi, bound)?;
        all_lemmas &= ok;
        if let Some(f) = f {
            let (passed, extra) = lemma_checks(&ctx, &juniors, &grading, &f)?;
            all_lemmas &= passed;
            v.as_object_mut()
                .expect("object")
                .extend(extra.as_object().expect("object").clone());
            found.push(f);
        }
        lemma_rows.push(v);
    }
    // products of consecutive relative invariants are homogeneous too
    for pair in found.windows(2) {
        let f = pair[0].mul(&pair[1]);
        let (passed, mut extra) = lemma_checks(&ctx, &juniors, &grading, &f)?;
        all_lemmas &= passed;
        extra
            .as_object_mut()
            .expect("object")
            .insert("polynomial".into(), Value::String(f.render()));
        lemma_rows.push(extra);
    }
    checks.push(json!({
        "name": "grading_lemmas",
        "passed": all_lemmas,
        "detail": format!("{} polynomials", lemma_rows.len()),
    }));
    let ok = checks.iter().all(|c| c["passed"] == Value::Bool(true));
    Ok((
        ok,
        json!({
            "twist": twist.0,
            "freeness": to_value(&report.freeness),
            "checks": checks,
            "sweep": to_value(&sweep),
            "grading": lemma_rows,
        }),
    ))
}

fn lemma_checks(
    ctx: &InvariantContext<'_>,
    juniors: &mckay::JuniorClasses,
    grading: &GradingData,
    f: &SparsePolynomial,
) -> Result<(bool, Value), JobError> {
    let rows = check_congruence_lemma(ctx, grading, f)?;
    let membership = check_h_membership(ctx, juniors, grading, f)?;
    let passed = rows.iter().all(|r| r.holds) && membership.agree;
    Ok((
        passed,
        json!({ "congruence": to_value(&rows), "membership": to_value(&membership) }),
    ))
}

fn sweep(group: &FiniteMatrixGroup) -> Result<(bool, Value), JobError> {
    let table = AgeTable::new(group)?;
    let sweep = mckay::galois_sweep(group, &table)?;
    Ok((sweep.consistent, json!({ "sweep": to_value(&sweep) })))
}

/// Indented `key: value` rendering of a report value.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_inline),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_inline(v) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(v));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_value(out, v, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                if is_inline(v) {
                    let _ = writeln!(out, "{pad}- {}", inline(v));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    write_value(out, v, indent + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"dimension": 4, "generators": [[
        ["-1", "0", "0", "0"], ["0", "-1", "0", "0"],
        ["0", "0", "-E(3)", "0"], ["0", "0", "0", "-E(3)^2"]]]}"#;

    #[test]
    fn parses_example_document() {
        let job = parse_job(EXAMPLE, Mode::Analyze, JobOptions::default()).unwrap();
        assert_eq!(job.dimension, 4);
        assert_eq!(job.generators.len(), 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let o = JobOptions::default;
        assert!(matches!(
            parse_job(r#"{"dimension": 2, "generators": []}"#, Mode::Age, o()),
            Err(JobError::NoGenerators)
        ));
        let small =
            r#"{"dimension": 4, "generators": [[["1","0","0"],["0","1","0"],["0","0","1"]]]}"#;
        assert!(matches!(
            parse_job(small, Mode::Age, o()),
            Err(JobError::Dimension { .. })
        ));
        let bad = r#"{"dimension": 1, "generators": [[["E(0)"]]]}"#;
        match parse_job(bad, Mode::Age, o()) {
            Err(JobError::Expression {
                generator: 1,
                row: 1,
                column: 1,
                source: CycloError::Parse { position, .. },
            }) => {
                assert_eq!(position, 2)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_job("{", Mode::Age, o()),
            Err(JobError::Malformed(_))
        ));
    }

    #[test]
    fn analyze_example_is_deterministic() {
        let job = parse_job(EXAMPLE, Mode::Analyze, JobOptions::default()).unwrap();
        let a = run(&job).unwrap();
        assert!(a.success);
        assert_eq!(a.value["cl_x"], "Z^2 + Z/2");
        assert_eq!(
            a.value["report"]["cl_quotient"]["invariant_factors"],
            json!([6])
        );
        assert_eq!(
            a.render(OutputFormat::Json),
            run(&job).unwrap().render(OutputFormat::Json)
        );
        assert!(a.render(OutputFormat::Text).contains("cl_x: Z^2 + Z/2"));
    }

    #[test]
    fn trivial_group_report() {
        let doc = r#"{"dimension": 2, "generators": [[["1","0"],["0","1"]]]}"#;
        let r = run(&parse_job(doc, Mode::Analyze, JobOptions::default()).unwrap()).unwrap();
        assert!(r.success);
        assert_eq!(r.value["group_order"], 1);
        assert_eq!(r.value["cl_x"], "0");
    }
}

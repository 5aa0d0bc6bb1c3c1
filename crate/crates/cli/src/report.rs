//! Check reports as JSON and as a plain table.

use anyhow::{Context, Result};
use fusionloc_core::verifier::{CheckResult, Status};
use serde::Serialize;
use std::fmt::Write;

#[derive(Serialize)]
struct Row<'a> {
    instance: &'a str,
    check_id: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

fn row(r: &CheckResult) -> Row<'_> {
    let (witness, reason) = match &r.status {
        Status::Pass => (None, None),
        Status::Fail { witness } => (Some(witness.as_str()), None),
        Status::Skipped { reason } => (None, Some(reason.as_str())),
    };
    Row { instance: &r.subject, check_id: &r.check_id, status: r.status.label(), witness, reason }
}

/// Sorted by check id, then subject.
pub fn sorted(mut results: Vec<CheckResult>) -> Vec<CheckResult> {
    results.sort();
    results
}

pub fn to_json(results: &[CheckResult]) -> String {
    let rows: Vec<Row> = results.iter().map(row).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("report serializes");
    s.push('\n');
    s
}

/// Keeps results whose check id matches the glob.
pub fn filter_only(results: Vec<CheckResult>, pattern: Option<&str>) -> Result<Vec<CheckResult>> {
    let Some(pattern) = pattern else { return Ok(results) };
    let glob = glob::Pattern::new(pattern).with_context(|| format!("bad --only pattern {pattern:?}"))?;
    Ok(results.into_iter().filter(|r| glob.matches(&r.check_id)).collect())
}

pub fn has_failure(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status.is_fail())
}

pub fn table(results: &[CheckResult]) -> String {
    let w_id = results.iter().map(|r| r.check_id.len()).max().unwrap_or(0).max("check".len());
    let w_subj = results.iter().map(|r| r.subject.len()).max().unwrap_or(0).max("instance".len());
    let mut out = String::new();
    writeln!(out, "{:w_id$}  {:w_subj$}  {:7}  detail", "check", "instance", "status").unwrap();
    for r in results {
        let line = format!("{:w_id$}  {:w_subj$}  {:7}  {}", r.check_id, r.subject, r.status.label(), r.status.detail().unwrap_or(""));
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out.push_str(&summary(results));
    out
}

pub fn summary(results: &[CheckResult]) -> String {
    let count = |l: &str| results.iter().filter(|r| r.status.label() == l).count();
    format!("{} results: {} pass, {} fail, {} skipped\n", results.len(), count("pass"), count("fail"), count("skipped"))
}

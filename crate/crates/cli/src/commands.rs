//! Subcommand bodies. Each returns whether verification succeeded; input
//! problems come back as errors.

use crate::classify::{classify, table as classify_table};
use crate::export::{locality_record, object_classes, transporter_dot, transporter_record};
use crate::input::{instances, load_builtin, load_file, primes_for, CorpusEntry, NamedGroup};
use crate::report;
use anyhow::{bail, Context, Result};
use fusionloc_core::constructions::{theta_quotient, DeltaSets, ObjectChoice, Setting};
use fusionloc_core::verifier::{group_case, run_fusion_checks, run_instance, run_locality_checks, theta_case, CheckResult, Instance};
use rayon::prelude::*;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Default)]
pub struct GroupSpec {
    pub builtin: Option<String>,
    pub file: Option<PathBuf>,
}

impl GroupSpec {
    pub fn load(&self, bound: usize) -> Result<NamedGroup> {
        match (&self.builtin, &self.file) {
            (Some(b), None) => load_builtin(b, bound),
            (None, Some(f)) => load_file(f, bound),
            _ => bail!("give exactly one of --builtin and --file"),
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn cmd_classify(spec: &GroupSpec, prime: Option<u64>, json: bool, out: Option<&Path>, bound: usize) -> Result<bool> {
    let g = spec.load(bound)?;
    let mut reports = Vec::new();
    for p in primes_for(&g.group, prime, false)? {
        let setting = Setting::new(g.group.clone(), p)?;
        reports.push(classify(&g.name, &setting));
    }
    let text = if json {
        let mut s = serde_json::to_string_pretty(&reports)?;
        s.push('\n');
        s
    } else {
        reports.iter().map(classify_table).collect::<Vec<_>>().join("\n")
    };
    write_out(out, &text)?;
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub prime: Option<u64>,
    pub objects: ObjectChoice,
    pub quotient_theta: bool,
    pub export: Option<ExportFormat>,
    pub collapse: bool,
    pub out: Option<PathBuf>,
    pub json: bool,
}

pub fn objects_name(c: ObjectChoice) -> &'static str {
    match c {
        ObjectChoice::All => "all",
        ObjectChoice::Delta => "delta",
        ObjectChoice::DeltaStar => "delta-star",
        ObjectChoice::Centric => "centric",
        ObjectChoice::Subcentric => "subcentric",
    }
}

/// Builds `L_Gamma(G)` or `L_{Delta*}(G)/Theta`, verifies it, runs the
/// locality checks and writes the requested artifacts.
pub fn cmd_build(spec: &GroupSpec, opts: &BuildOptions, bound: usize) -> Result<bool> {
    let g = spec.load(bound)?;
    let p = match opts.prime {
        Some(p) => primes_for(&g.group, Some(p), false)?[0],
        None => primes_for(&g.group, None, false)?[0],
    };
    let setting = Setting::new(g.group.clone(), p)?;
    let sets = DeltaSets::new(&setting);
    let subject = format!("{}@{}", g.name, p);
    let objects = setting.objects(opts.objects, &sets);
    let (case, theta_order) = if opts.quotient_theta {
        if opts.objects != ObjectChoice::DeltaStar {
            bail!("--quotient-theta needs --objects delta-star");
        }
        let t = theta_quotient(&setting, &sets)?;
        (theta_case(&subject, &setting, &t), Some(t.theta.count()))
    } else {
        let l = setting.locality(&objects)?;
        let expected = objects.is_subset(&sets.delta);
        (group_case(format!("{subject}/L_{}", objects_name(opts.objects)), &setting, l, expected), None)
    };
    let fusion_ok = !report::has_failure(&run_fusion_checks(&subject, &setting, &setting.fusion));
    let results = report::sorted(run_locality_checks(&case, &setting, fusion_ok));
    let l = &case.locality;
    let t = l.transporter_category();

    let classes = object_classes(l);
    let n_classes = classes.values().collect::<std::collections::BTreeSet<_>>().len();
    let mut summary = format!(
        "{}: carrier {}, |S| = {}, {} objects in {} classes, {} composable pairs",
        case.subject,
        l.size(),
        l.s().order(),
        l.objects().len(),
        n_classes,
        (0..l.size()).map(|a| (0..l.size()).filter(|&b| l.product2(a, b).is_some()).count()).sum::<usize>()
    );
    if let Some(k) = theta_order {
        summary.push_str(&format!(", Theta of order {k}"));
    }
    summary.push('\n');

    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let rec = locality_record(&case.subject, l, &setting.group);
        write_out(Some(&dir.join("locality.json")), &(serde_json::to_string_pretty(&rec)? + "\n"))?;
        match opts.export {
            Some(ExportFormat::Dot) => write_out(Some(&dir.join("transporter.dot")), &transporter_dot(l, &t, &setting.group, opts.collapse))?,
            Some(ExportFormat::Json) => {
                write_out(Some(&dir.join("transporter.json")), &(serde_json::to_string_pretty(&transporter_record(l, &t, &setting.group))? + "\n"))?
            }
            None => {}
        }
        write_out(Some(&dir.join("checks.json")), &report::to_json(&results))?;
        if report::has_failure(&results) {
            let fails: Vec<CheckResult> = results.iter().filter(|r| r.status.is_fail()).cloned().collect();
            write_out(Some(&dir.join("failures.json")), &report::to_json(&fails))?;
        }
        write_out(None, &summary)?;
        write_out(None, &if opts.json { report::to_json(&results) } else { report::table(&results) })?;
    } else {
        match opts.export {
            Some(ExportFormat::Dot) => write_out(None, &transporter_dot(l, &t, &setting.group, opts.collapse))?,
            Some(ExportFormat::Json) => write_out(None, &(serde_json::to_string_pretty(&transporter_record(l, &t, &setting.group))? + "\n"))?,
            None => {
                write_out(None, &summary)?;
                write_out(None, &if opts.json { report::to_json(&results) } else { report::table(&results) })?;
            }
        }
    }
    if report::has_failure(&results) {
        for r in results.iter().filter(|r| r.status.is_fail()) {
            eprintln!("FAIL {} {}: {}", r.check_id, r.subject, r.status.detail().unwrap_or(""));
        }
        return Ok(false);
    }
    Ok(true)
}

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    pub fail_fast: bool,
    pub only: Option<String>,
    pub json: bool,
    pub out: Option<PathBuf>,
}

/// Runs every check over the instances. Results are merged in sorted order
/// whatever the evaluation order; with `fail_fast`, instances run one at a
/// time and evaluation stops after the first one with a failure.
pub fn run_checks(instances: &[Instance], opts: &CorpusOptions) -> Result<Vec<CheckResult>> {
    let only = opts.only.as_deref();
    report::filter_only(Vec::new(), only)?;
    let mut results = Vec::new();
    if opts.fail_fast {
        for inst in instances {
            let r = report::filter_only(run_instance(inst), only)?;
            let failed = report::has_failure(&r);
            results.extend(r);
            if failed {
                break;
            }
        }
    } else {
        let per: Vec<Vec<CheckResult>> = instances.par_iter().map(run_instance).collect();
        for r in per {
            results.extend(report::filter_only(r, only)?);
        }
    }
    Ok(report::sorted(results))
}

pub fn cmd_corpus(entries: &[CorpusEntry], opts: &CorpusOptions, bound: usize) -> Result<bool> {
    let insts = instances(entries, bound)?;
    let results = run_checks(&insts, opts)?;
    let text = if opts.json { report::to_json(&results) } else { report::table(&results) };
    write_out(opts.out.as_deref(), &text)?;
    if opts.out.is_some() {
        write_out(None, &report::summary(&results))?;
    }
    Ok(!report::has_failure(&results))
}

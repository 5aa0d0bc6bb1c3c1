//! Batch evaluation of the local-theoretic statements over corpus instances.
//!
//! Each check yields one [`CheckResult`] per subject. A failing check always
//! carries a witness, chosen smallest first in subgroup order and then in
//! canonical order, which is the order of lattice indices.

mod fusion_checks;
mod group_checks;
mod locality_checks;
mod mutation;

pub use fusion_checks::run_fusion_checks;
pub use group_checks::run_group_checks;
pub use locality_checks::{run_locality_checks, LocalityCase};
pub use mutation::{fusion_mutants, locality_mutants, Mutant};

use crate::bitset::BitSet;
use crate::constructions::{carrier_index, theta_quotient, DeltaSets, Setting, ThetaData};
use crate::corpus::{builtin, corpus_primes, BUILTIN_NAMES};
use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::group::{FiniteGroup, Subgroup};
use crate::locality::Locality;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl Status {
    pub fn fail(witness: impl Into<String>) -> Status {
        Status::Fail { witness: witness.into() }
    }

    pub fn skipped(reason: impl Into<String>) -> Status {
        Status::Skipped { reason: reason.into() }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail { .. } => "fail",
            Status::Skipped { .. } => "skipped",
        }
    }

    /// The witness of a failure or the reason for a skip.
    pub fn detail(&self) -> Option<&str> {
        match self {
            Status::Pass => None,
            Status::Fail { witness } => Some(witness),
            Status::Skipped { reason } => Some(reason),
        }
    }
}

impl From<core::result::Result<(), String>> for Status {
    fn from(r: core::result::Result<(), String>) -> Status {
        match r {
            Ok(()) => Status::Pass,
            Err(w) => Status::Fail { witness: w },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CheckResult {
    pub check_id: String,
    pub subject: String,
    pub status: Status,
}

/// Collects results for one subject. Once `block` is set, every later check is
/// recorded as skipped with that reason instead of being evaluated.
pub struct Recorder {
    subject: String,
    block: Option<String>,
    pub results: Vec<CheckResult>,
}

impl Recorder {
    pub fn new(subject: impl Into<String>) -> Self {
        Recorder { subject: subject.into(), block: None, results: Vec::new() }
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn check<F: FnOnce() -> Status>(&mut self, id: &str, f: F) -> bool {
        let status = match &self.block {
            Some(reason) => Status::skipped(reason.clone()),
            None => f(),
        };
        let ok = status == Status::Pass;
        self.results.push(CheckResult { check_id: id.into(), subject: self.subject.clone(), status });
        ok
    }

    pub fn block(&mut self, reason: impl Into<String>) {
        if self.block.is_none() {
            self.block = Some(reason.into());
        }
    }

    pub fn is_blocked(&self) -> bool {
        self.block.is_some()
    }
}

/// A corpus group at one prime.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub setting: Setting,
}

impl Instance {
    pub fn new(name: impl Into<String>, group: FiniteGroup, p: u64) -> Result<Self> {
        Ok(Instance { name: name.into(), setting: Setting::new(group, p)? })
    }

    pub fn subject(&self) -> String {
        format!("{}@{}", self.name, self.setting.p)
    }
}

/// Every builtin group at every prime dividing its order.
pub fn builtin_instances(bound: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for name in BUILTIN_NAMES {
        let g = builtin(name).expect("builtin preset").build(bound)?;
        out.extend(instances_of(name, &g)?);
    }
    Ok(out)
}

pub fn instances_of(name: &str, g: &FiniteGroup) -> Result<Vec<Instance>> {
    corpus_primes(g).into_iter().map(|p| Instance::new(name, g.clone(), p)).collect()
}

/// `N_G(P)` for a fully normalized representative `P` of each class of
/// nontrivial non-normal subgroups of `S`. Its fusion system is `N_F(P)`.
pub fn local_instances(inst: &Instance) -> Result<Vec<Instance>> {
    let setting = &inst.setting;
    let f = &setting.fusion;
    let mut out = Vec::new();
    for class in f.classes() {
        let Some(&p) = class.iter().find(|&&p| f.is_fully_normalized(p)) else { continue };
        let n = setting.local_normalizer(p);
        if f.order_of(p) == 1 || n.order() == setting.group.order() {
            continue;
        }
        let (ng, _) = setting.group.subgroup_group(&n);
        out.push(Instance::new(format!("{}/N_G(P{p})", inst.name), ng, setting.p)?);
    }
    Ok(out)
}

/// All checks for one instance, sorted by check id and subject.
pub fn run_instance(inst: &Instance) -> Vec<CheckResult> {
    let subject = inst.subject();
    let setting = &inst.setting;
    let mut results = run_fusion_checks(&subject, setting, &setting.fusion);
    let fusion_ok = !results.iter().any(|r| r.status.is_fail());
    let sets = DeltaSets::new(setting);
    results.extend(run_group_checks(&subject, setting, &sets));
    for case in locality_cases(&subject, setting, &sets, &mut results) {
        results.extend(run_locality_checks(&case, setting, fusion_ok));
    }
    results.sort();
    results
}

/// `L_Delta(G)` when `S` is in `Delta`, and `L_{Delta*}(G)/Theta`. Records the
/// `Theta` check for the instance on the way.
fn locality_cases(subject: &str, setting: &Setting, sets: &DeltaSets, results: &mut Vec<CheckResult>) -> Vec<LocalityCase> {
    let mut cases = Vec::new();
    if sets.delta.contains(setting.fusion.whole()) {
        match setting.locality(&sets.delta) {
            Ok(l) => {
                cases.push(group_case(format!("{subject}/L_Delta"), setting, l, true));
            }
            Err(e) => results.push(CheckResult {
                check_id: "Loc.Axioms".into(),
                subject: format!("{subject}/L_Delta"),
                status: Status::fail(format!("construction failed: {e}")),
            }),
        }
    }
    let mut rec = Recorder::new(subject);
    let theta = theta_quotient(setting, sets);
    match theta {
        Ok(t) => {
            rec.check("Theta", || locality_checks::theta_status(setting, &t));
            rec.check("LocalityProjection", || locality_checks::projection_status(&t));
            let case = theta_case(subject, setting, &t);
            match centric_restriction(&case) {
                Ok(Some(r)) => cases.push(r),
                Ok(None) => {}
                Err(e) => results.push(CheckResult {
                    check_id: "Loc.Axioms".into(),
                    subject: format!("{subject}/L_Delta*/Theta|F^c"),
                    status: Status::fail(format!("restriction failed: {e}")),
                }),
            }
            cases.push(case);
        }
        Err(e) => {
            rec.check("Theta", || Status::fail(format!("Theta quotient failed: {e}")));
        }
    }
    results.extend(rec.results);
    cases
}

/// The case for a locality `L_Gamma(G)` built directly from `G`. It has
/// objective characteristic p exactly when `Gamma` lies in `Delta`.
pub fn group_case(subject: String, setting: &Setting, locality: Locality, objective_expected: bool) -> LocalityCase {
    let normals = normal_subsets(setting, &locality, locality.size(), Some);
    LocalityCase { subject, locality, s_map: (0..setting.fusion.s().order()).collect(), normals, objective_expected }
}

/// The case for `L_{Delta*}(G)/Theta`.
pub fn theta_case(subject: &str, setting: &Setting, t: &ThetaData) -> LocalityCase {
    let proj = &t.quotient.projection;
    let size = t.quotient.locality.size();
    LocalityCase {
        subject: format!("{subject}/L_Delta*/Theta"),
        locality: t.quotient.locality.clone(),
        s_map: t.quotient.s_projection.clone(),
        normals: normal_subsets(setting, &t.source, size, |f| Some(proj[f])),
        objective_expected: true,
    }
}

/// The restriction of a locality to the centric subgroups of its fusion
/// system, when that is a proper subset of the objects.
fn centric_restriction(case: &LocalityCase) -> Result<Option<LocalityCase>> {
    let l = &case.locality;
    let f = l.fusion_system()?;
    let centric = BitSet::from_iter(f.lattice().len(), (0..f.lattice().len()).filter(|&p| f.is_centric(p)));
    if &centric == l.delta() || !centric.is_subset(l.delta()) {
        return Ok(None);
    }
    let sub = l.restrict(&centric)?;
    let mut id_of = alloc::vec![None; l.size()];
    for (i, &f) in sub.ids.iter().enumerate() {
        id_of[f] = Some(i);
    }
    let size = sub.locality.size();
    let normals = case.normals.iter().map(|(n0, bits)| (n0.clone(), BitSet::from_iter(size, bits.iter().filter_map(|f| id_of[f])))).collect();
    Ok(Some(LocalityCase {
        subject: format!("{}|F^c", case.subject),
        locality: sub.locality,
        s_map: case.s_map.clone(),
        normals,
        objective_expected: case.objective_expected,
    }))
}

/// `N_0 cap carrier` for each normal subgroup `N_0` of `G`, pushed through `map`
/// into a carrier of `size` elements.
fn normal_subsets<F: Fn(usize) -> Option<usize>>(setting: &Setting, l: &Locality, size: usize, map: F) -> Vec<(Subgroup, BitSet)> {
    let id = carrier_index(l, setting.group.order());
    setting
        .group
        .normal_subgroups()
        .into_iter()
        .map(|n| {
            let bits = BitSet::from_iter(size, n.elements().filter_map(|g| id[g]).filter_map(&map));
            (n, bits)
        })
        .collect()
}

/// Runs every instance and merges the results deterministically.
pub fn run_all(instances: &[Instance]) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = instances.iter().flat_map(run_instance).collect();
    out.sort();
    out
}

/// Lattice index label used in witnesses.
pub(crate) fn sub_label(f: &FusionSystem, i: usize) -> String {
    format!("P{i}(order {})", f.order_of(i))
}

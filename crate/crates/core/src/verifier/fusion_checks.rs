use super::{sub_label, Recorder, Status};
use crate::bitset::BitSet;
use crate::constructions::Setting;
use crate::fusion::{FusionSystem, NormalityRule, Subsystem};
use crate::group::Subgroup;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::CheckResult;

/// Subcentric subgroups, evaluated once per class.
pub(crate) fn subcentric_set(f: &FusionSystem) -> BitSet {
    let mut out = BitSet::new(f.lattice().len());
    for class in f.classes() {
        if f.is_subcentric(class[0]) {
            for q in class {
                out.insert(q);
            }
        }
    }
    out
}

/// Per-subgroup facts shared by several checks.
struct Facts {
    centric: BitSet,
    cr: BitSet,
    quasicentric: BitSet,
    subcentric: BitSet,
    fully_normalized: BitSet,
    fully_centralized: BitSet,
    /// `N_F(P)` constrained, for fully normalized `P`.
    n_constrained: Vec<Option<bool>>,
    /// `C_F(P)` constrained, for fully centralized `P`.
    c_constrained: Vec<Option<bool>>,
    normal: Vec<usize>,
}

impl Facts {
    fn new(f: &FusionSystem) -> Self {
        let n = f.lattice().len();
        let mut facts = Facts {
            centric: BitSet::new(n),
            cr: BitSet::new(n),
            quasicentric: BitSet::new(n),
            subcentric: subcentric_set(f),
            fully_normalized: BitSet::new(n),
            fully_centralized: BitSet::new(n),
            n_constrained: alloc::vec![None; n],
            c_constrained: alloc::vec![None; n],
            normal: f.normal_subgroups(NormalityRule::Criterion),
        };
        for class in f.classes() {
            let c = f.is_centric(class[0]);
            let r = c && f.is_radical(class[0]);
            let q = f.is_quasicentric(class[0]);
            for &p in &class {
                if c {
                    facts.centric.insert(p);
                }
                if r {
                    facts.cr.insert(p);
                }
                if q {
                    facts.quasicentric.insert(p);
                }
            }
        }
        for p in 0..n {
            if f.is_fully_normalized(p) {
                facts.fully_normalized.insert(p);
                facts.n_constrained[p] = Some(f.normalizer_system(p).system.is_constrained());
            }
            if f.is_fully_centralized(p) {
                facts.fully_centralized.insert(p);
                facts.c_constrained[p] = Some(f.centralizer_system(p).system.is_constrained());
            }
        }
        facts
    }
}

/// First subgroup index (smallest first) for which `bad` returns a witness.
fn first<I: IntoIterator<Item = usize>, F: FnMut(usize) -> Option<String>>(iter: I, mut bad: F) -> Status {
    for i in iter {
        if let Some(w) = bad(i) {
            return Status::fail(w);
        }
    }
    Status::Pass
}

/// `|Hom_F(P, Q)| = |N_G(P, Q)| / |C_G(P)|` for all subgroups `P`, `Q` of `S`,
/// the transporter set counted directly in `G`.
fn group_hom_counts(setting: &Setting, f: &FusionSystem) -> Status {
    let g = &setting.group;
    let lat = f.lattice();
    if lat.len() != setting.fusion.lattice().len() {
        return Status::fail("lattice of S does not match the group");
    }
    let subs: Vec<Subgroup> = (0..lat.len()).map(|i| setting.in_group(i)).collect();
    for (p, sp) in subs.iter().enumerate() {
        let c = g.centralizer(sp).order();
        let mut counts = alloc::vec![0usize; lat.len()];
        for x in 0..g.order() {
            let img = g.conjugate(sp, x);
            if let Some(q) = setting.lattice_index(&img) {
                for over in lat.overgroups_of(q) {
                    counts[over] += 1;
                }
            }
        }
        for (q, &n) in counts.iter().enumerate() {
            let have = f.hom(p, q).count();
            if have * c != n {
                return Status::fail(format!("|Hom({}, {})| is {have}, the group gives {}", sub_label(f, p), sub_label(f, q), n / c));
            }
        }
    }
    Status::Pass
}

/// Checks on `f`, which is `F_S(G)` for the setting or a corrupted copy of it.
pub fn run_fusion_checks(subject: &str, setting: &Setting, f: &FusionSystem) -> Vec<CheckResult> {
    let mut rec = Recorder::new(subject);
    if !rec.check("F.Axioms", || f.axiom_violation().map_or(Status::Pass, Status::fail)) {
        rec.block("fusion system axioms fail");
    }
    rec.check("F.Group", || group_hom_counts(setting, f));
    let saturated = rec.check("F.Saturated", || {
        let by_class = f.saturation_witness();
        let by_axioms = f.is_saturated_by_axioms();
        match (by_class, by_axioms) {
            (None, true) => Status::Pass,
            (Some(p), false) => Status::fail(format!("class of {} has no fully automized receptive member", sub_label(f, p))),
            (Some(p), true) => Status::fail(format!("saturation routes disagree at {}", sub_label(f, p))),
            (None, false) => Status::fail("saturation routes disagree: axioms fail, class-wise test passes"),
        }
    });
    if !saturated {
        rec.block("fusion system is not saturated");
    }
    let facts = if rec.is_blocked() { None } else { Some(Facts::new(f)) };
    let n = f.lattice().len();
    let lat = f.lattice();

    rec.check("Chain", || {
        let fx = facts.as_ref().expect("facts");
        first(0..n, |p| {
            if fx.cr.contains(p) && !fx.centric.contains(p) {
                Some(format!("{} centric radical but not centric", sub_label(f, p)))
            } else if fx.centric.contains(p) && !fx.quasicentric.contains(p) {
                Some(format!("{} centric but not quasicentric", sub_label(f, p)))
            } else if fx.quasicentric.contains(p) && !fx.subcentric.contains(p) {
                Some(format!("{} quasicentric but not subcentric", sub_label(f, p)))
            } else {
                None
            }
        })
    });

    rec.check("L3.1-equiv", || {
        let fx = facts.as_ref().expect("facts");
        first(0..n, |q| {
            let conj = f.class(q);
            let fnorm: Vec<usize> = conj.iter().copied().filter(|&p| fx.fully_normalized.contains(p)).collect();
            let fcent: Vec<usize> = conj.iter().copied().filter(|&p| fx.fully_centralized.contains(p)).collect();
            let op_centric: Vec<bool> = fnorm.iter().map(|&p| f.is_centric(f.o_p_of_normalizer(p))).collect();
            let nc: Vec<bool> = fnorm.iter().map(|&p| fx.n_constrained[p].expect("fully normalized")).collect();
            let cc: Vec<bool> = fcent.iter().map(|&p| fx.c_constrained[p].expect("fully centralized")).collect();
            let conds = [
                fx.subcentric.contains(q),
                op_centric.iter().any(|&b| b),
                nc.iter().all(|&b| b),
                nc.iter().any(|&b| b),
                cc.iter().all(|&b| b),
                cc.iter().any(|&b| b),
            ];
            if conds.iter().all(|&b| b == conds[0]) {
                None
            } else {
                Some(format!("{}: (a1,a2,b1,b2,c1,c2) = {conds:?}", sub_label(f, q)))
            }
        })
    });

    rec.check("SubcentricProp", || {
        let fx = facts.as_ref().expect("facts");
        first(fx.subcentric.iter(), |p| {
            if let Some(q) = f.class(p).into_iter().find(|&q| !fx.subcentric.contains(q)) {
                return Some(format!("{} subcentric, conjugate {} not", sub_label(f, p), sub_label(f, q)));
            }
            lat.overgroups_of(p)
                .into_iter()
                .find(|&q| !fx.subcentric.contains(q))
                .map(|q| format!("{} subcentric, overgroup {} not", sub_label(f, p), sub_label(f, q)))
        })
    });

    rec.check("P1.5a", || {
        let fx = facts.as_ref().expect("facts");
        for &r in &fx.normal {
            let st = first(0..n, |p| {
                let pr = lat.join(f.s(), p, r);
                (fx.subcentric.contains(pr) != fx.subcentric.contains(p)).then(|| format!("R = {}, P = {}", sub_label(f, r), sub_label(f, p)))
            });
            if st.is_fail() {
                return st;
            }
        }
        Status::Pass
    });

    rec.check("P1.5b", || {
        let fx = facts.as_ref().expect("facts");
        for z in f.central_subgroups() {
            let q = match f.quotient_by_central(z) {
                Ok(q) => q,
                Err(e) => return Status::fail(format!("F/{} failed: {e}", sub_label(f, z))),
            };
            if !q.system.is_saturated() {
                return Status::fail(format!("F/{} is not saturated", sub_label(f, z)));
            }
            let qs = subcentric_set(&q.system);
            let st = first(0..n, |p| {
                (fx.subcentric.contains(p) != qs.contains(q.lattice_map[p])).then(|| format!("Z = {}, P = {}", sub_label(f, z), sub_label(f, p)))
            });
            if st.is_fail() {
                return st;
            }
        }
        Status::Pass
    });

    let k_normalizers = if rec.is_blocked() { Vec::new() } else { k_normalizer_cases(f) };
    rec.check("P1.5c", || {
        let fx = facts.as_ref().expect("facts");
        for case in &k_normalizers {
            for p in case.subcentric.iter() {
                let pq = lat.join(f.s(), case.sub.to_parent(f, p), case.q);
                if !fx.subcentric.contains(pq) {
                    return Status::fail(format!(
                        "Q = {}, |K| = {}, P = {} of N_F^K(Q)",
                        sub_label(f, case.q),
                        case.k_order,
                        sub_label(f, case.sub.to_parent(f, p))
                    ));
                }
            }
        }
        Status::Pass
    });
    rec.check("P1.5d", || {
        let fx = facts.as_ref().expect("facts");
        for case in &k_normalizers {
            for p in fx.subcentric.iter() {
                if let Some(i) = case.sub.from_parent(f, p) {
                    if !case.subcentric.contains(i) {
                        return Status::fail(format!("Q = {}, |K| = {}, P = {}", sub_label(f, case.q), case.k_order, sub_label(f, p)));
                    }
                }
            }
        }
        Status::Pass
    });

    rec.check("NCconstrained", || {
        let fx = facts.as_ref().expect("facts");
        first(fx.fully_normalized.iter(), |q| {
            let (a, b) = (fx.n_constrained[q], fx.c_constrained[q]);
            (a != b).then(|| format!("{}: N_F constrained {a:?}, C_F constrained {b:?}", sub_label(f, q)))
        })
    });

    rec.check("fsfrc", || {
        let fx = facts.as_ref().expect("facts");
        first(0..n, |q| {
            if !(fx.subcentric.contains(q) && fx.fully_normalized.contains(q)) || f.o_p_of_normalizer(q) != q {
                return None;
            }
            (!fx.cr.contains(q)).then(|| format!("{} is subcentric, fully normalized, O_p(N_F(Q)) = Q, but not centric radical", sub_label(f, q)))
        })
    });

    rec.check("P1.6e", || {
        let fx = facts.as_ref().expect("facts");
        for case in k_normalizers.iter().filter(|c| fx.normal.contains(&c.q)) {
            let st = first(0..n, |p| {
                let expect = fx.subcentric.contains(p) && lat.is_sub(p, case.sub.t);
                let have = case.sub.from_parent(f, p).is_some_and(|i| case.subcentric.contains(i));
                (expect != have).then(|| format!("R = {}, |K| = {}, P = {}", sub_label(f, case.q), case.k_order, sub_label(f, p)))
            });
            if st.is_fail() {
                return st;
            }
        }
        Status::Pass
    });

    let normal_cases = if rec.is_blocked() { Vec::new() } else { normal_subsystem_cases(setting, f) };
    rec.check("P1.6a", || {
        for case in &normal_cases {
            let e = match &case.sub {
                Ok(e) => e,
                Err(w) => return Status::fail(w.clone()),
            };
            for p in case.subcentric.iter() {
                let pp = e.to_parent(f, p);
                for q in f.class(pp) {
                    if !e.from_parent(f, q).is_some_and(|i| case.subcentric.contains(i)) {
                        return Status::fail(format!("{}: {} in E^s, conjugate {} not", case.label, sub_label(f, pp), sub_label(f, q)));
                    }
                }
            }
        }
        Status::Pass
    });
    rec.check("P1.6b", || {
        let fx = facts.as_ref().expect("facts");
        for case in &normal_cases {
            let Ok(e) = &case.sub else { continue };
            for p in fx.subcentric.iter() {
                if let Some(i) = e.from_parent(f, p) {
                    if !case.subcentric.contains(i) {
                        return Status::fail(format!("{}: {} in F^s, below T, not in E^s", case.label, sub_label(f, p)));
                    }
                }
            }
        }
        Status::Pass
    });
    rec.check("P1.6c", || Status::skipped("subsystem not constructible in scope"));
    rec.check("P1.6d", || Status::skipped("subsystem not constructible in scope"));
    rec.check("SubcentricEF", || {
        let fx = facts.as_ref().expect("facts");
        for case in &normal_cases {
            let Ok(e) = &case.sub else { continue };
            let c = match f.centralizer_of_subsystem(e) {
                Ok(c) => c,
                Err(err) => return Status::fail(format!("{}: C_S(E) failed: {err}", case.label)),
            };
            for p in case.subcentric.iter() {
                let pc = lat.join(f.s(), e.to_parent(f, p), c);
                if !fx.subcentric.contains(pc) {
                    return Status::fail(format!(
                        "{}: P = {} in E^s, PC_S(E) = {} not subcentric",
                        case.label,
                        sub_label(f, e.to_parent(f, p)),
                        sub_label(f, pc)
                    ));
                }
            }
        }
        Status::Pass
    });
    rec.results
}

struct KCase {
    q: usize,
    k_order: usize,
    sub: Subsystem,
    subcentric: BitSet,
}

/// `N_F^K(Q)` for every `Q` and every normal subgroup `K` of `Aut_F(Q)` with
/// `Q` fully K-normalized.
fn k_normalizer_cases(f: &FusionSystem) -> Vec<KCase> {
    let mut out = Vec::new();
    for q in 0..f.lattice().len() {
        let (ag, auts) = f.aut_group(q);
        for kn in ag.normal_subgroups() {
            let k: BTreeSet<Vec<u16>> = kn.elements().map(|i| auts[i].map.clone()).collect();
            if !f.is_fully_k_normalized(q, &k) {
                continue;
            }
            let sub = f.k_normalizer_unchecked(q, &k);
            let subcentric = subcentric_set(&sub.system);
            out.push(KCase { q, k_order: k.len(), sub, subcentric });
        }
    }
    out
}

struct NormalCase {
    label: String,
    sub: Result<Subsystem, String>,
    subcentric: BitSet,
}

/// `F_T(N)` for every normal subgroup `N` of `G`.
fn normal_subsystem_cases(setting: &Setting, f: &FusionSystem) -> Vec<NormalCase> {
    setting
        .group
        .normal_subgroups()
        .iter()
        .map(|n| {
            let label = format!("N of order {}", n.order());
            match f.normal_subgroup_system(&setting.group, &setting.s, n) {
                Ok(e) => {
                    let subcentric = subcentric_set(&e.system);
                    NormalCase { label, sub: Ok(e), subcentric }
                }
                Err(err) => NormalCase { sub: Err(format!("{label}: F_T(N) failed: {err}")), label, subcentric: BitSet::new(0) },
            }
        })
        .collect()
}

//! Acceptance suite: one PASS/FAIL line per criterion, exit status nonzero if
//! any criterion fails. Every tolerance is pinned below.

use fusionloc_core::bitset::BitSet;
use fusionloc_core::constructions::{theta_quotient, DeltaSets, Setting};
use fusionloc_core::group::{Subgroup, DEFAULT_ORDER_BOUND};
use fusionloc_core::verifier::{
    builtin_instances, fusion_mutants, local_instances, locality_mutants, run_all, run_fusion_checks, theta_case, CheckResult, Instance, Status,
};
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

/// Wall-clock limit for one full corpus run.
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Minimum number of subgroups on which the six subcentric conditions are compared.
const MIN_EQUIVALENCE_SUBGROUPS: usize = 200;
/// Mutants per corpus instance, per kind, and the seed that draws them.
const MUTANTS_PER_INSTANCE: usize = 20;
const MUTATION_SEED: u64 = 20_240_917;
/// Required fraction of mutants with at least one witnessed failure.
const MUTATION_DETECTION: f64 = 1.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Corpus) -> Outcome);

struct Corpus {
    instances: Vec<Instance>,
    results: Vec<CheckResult>,
    elapsed: Duration,
}

fn instance<'a>(corpus: &'a Corpus, subject: &str) -> &'a Instance {
    corpus.instances.iter().find(|i| i.subject() == subject).unwrap_or_else(|| panic!("{subject} missing from corpus"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Statuses of one check id over the corpus: (pass, fail witnesses, skipped).
fn tally(results: &[CheckResult], id: &str) -> (usize, Vec<String>, usize) {
    let mut pass = 0;
    let mut fails = Vec::new();
    let mut skipped = 0;
    for r in results.iter().filter(|r| r.check_id == id) {
        match &r.status {
            Status::Pass => pass += 1,
            Status::Fail { witness } => fails.push(format!("{}: {witness}", r.subject)),
            Status::Skipped { .. } => skipped += 1,
        }
    }
    (pass, fails, skipped)
}

fn central_subgroup(inst: &Instance) -> usize {
    let s = &inst.setting;
    s.lattice_index(&s.group.center().intersection(&s.s)).expect("Z(G) cap S is a subgroup of S")
}

fn inclusion_chain(c: &Corpus) -> Outcome {
    let mut subgroups = 0;
    for inst in &c.instances {
        let f = &inst.setting.fusion;
        ensure(f.is_saturated(), format!("{} is not saturated", inst.subject()))?;
        for p in 0..f.lattice().len() {
            subgroups += 1;
            let cr = f.is_centric(p) && f.is_radical(p);
            let chain = [cr, f.is_centric(p), f.is_quasicentric(p), f.is_subcentric(p)];
            if chain.windows(2).any(|w| w[0] && !w[1]) {
                return Err(format!("{} P{p}: (cr, c, q, s) = {chain:?}", inst.subject()));
            }
        }
    }
    let (_, fails, _) = tally(&c.results, "Chain");
    ensure(fails.is_empty(), format!("verifier Chain failures: {fails:?}"))?;
    ensure(c.elapsed < CORPUS_TIME_LIMIT, format!("full corpus run took {:.1?}", c.elapsed))?;
    Ok(format!("{subgroups} subgroups over {} systems; full corpus run {:.1?} (limit {:?})", c.instances.len(), c.elapsed, CORPUS_TIME_LIMIT))
}

fn subcentric_equivalences(c: &Corpus) -> Outcome {
    let (pass, fails, skipped) = tally(&c.results, "L3.1-equiv");
    ensure(fails.is_empty() && skipped == 0, format!("corpus disagreements {fails:?}, {skipped} skipped"))?;
    let corpus: usize = c.instances.iter().map(|i| i.setting.fusion.lattice().len()).sum();
    let mut derived = 0;
    let mut systems = 0;
    for inst in &c.instances {
        for local in local_instances(inst).map_err(|e| e.to_string())? {
            let r = run_fusion_checks(&local.subject(), &local.setting, &local.setting.fusion);
            let (p, f, s) = tally(&r, "L3.1-equiv");
            ensure(p == 1 && f.is_empty() && s == 0, format!("{}: {f:?}", local.subject()))?;
            derived += local.setting.fusion.lattice().len();
            systems += 1;
        }
    }
    let total = corpus + derived;
    ensure(total >= MIN_EQUIVALENCE_SUBGROUPS, format!("only {total} subgroups compared (need {MIN_EQUIVALENCE_SUBGROUPS})"))?;
    Ok(format!(
        "six conditions agree on {corpus} subgroups of {pass} corpus systems and {derived} subgroups of {systems} normalizer systems N_F(P) = F(N_G(P)); total {total} >= {MIN_EQUIVALENCE_SUBGROUPS}"
    ))
}

fn group_examples(c: &Corpus) -> Outcome {
    let a = instance(c, "C2xA5@2");
    let z = central_subgroup(a);
    let sets = DeltaSets::new(&a.setting);
    let f = &a.setting.fusion;
    ensure(f.order_of(z) == 2, "C2xA5: Z(G) cap S is not of order 2")?;
    ensure(f.is_subcentric(z) && sets.subcentric.contains(z), "C2xA5: central C2 is not subcentric")?;
    ensure(!sets.delta_star.contains(z), "C2xA5: central C2 lies in Delta*")?;

    let b = instance(c, "C2xS4@2");
    let z = central_subgroup(b);
    let sets = DeltaSets::new(&b.setting);
    let f = &b.setting.fusion;
    ensure(f.order_of(z) == 2, "C2xS4: Z(G) cap S is not of order 2")?;
    ensure(sets.delta.contains(z), "C2xS4: central C2 is not in Delta")?;
    ensure(!f.is_quasicentric(z) && !sets.quasicentric.contains(z), "C2xS4: central C2 is quasicentric")?;
    Ok("C2xA5@2: central C2 subcentric, not in Delta*; C2xS4@2: central C2 in Delta, not quasicentric".into())
}

/// `{g : S cap S^g != 1}`, the carrier of `L_Delta(G)` for `Delta` the nontrivial subgroups.
fn sylow_intersection_carrier(setting: &Setting) -> BTreeSet<usize> {
    let g = &setting.group;
    (0..g.order()).filter(|&x| !setting.s.intersection(&g.conjugate(&setting.s, x)).is_trivial()).collect()
}

fn characteristic_2_type_localities(c: &Corpus) -> Outcome {
    let s4 = &instance(c, "S4@2").setting;
    ensure(s4.is_characteristic_p_type(), "S4 is not of characteristic 2-type")?;
    let l = s4.locality(&s4.nontrivial()).map_err(|e| e.to_string())?;
    l.verify(&Default::default()).map_err(|v| format!("L_Delta(S4) fails {}: {}", v.axiom, v.witness))?;
    ensure(l.is_objective_char_p(), "L_Delta(S4) is not of objective characteristic 2")?;
    let fl = l.fusion_system().map_err(|e| e.to_string())?;
    let id: Vec<usize> = (0..8).collect();
    ensure(fl.morphism_set(&id) == s4.fusion.morphism_set(&id), "F_S(L_Delta(S4)) differs from F_D8(S4)")?;
    let carrier: BTreeSet<usize> = l.labels().iter().copied().collect();
    ensure(carrier == sylow_intersection_carrier(s4) && carrier.len() == 24, format!("L_Delta(S4) carrier has {} elements", carrier.len()))?;

    let a5 = &instance(c, "A5@2").setting;
    let l = a5.locality(&a5.nontrivial()).map_err(|e| e.to_string())?;
    let carrier: BTreeSet<usize> = l.labels().iter().copied().collect();
    ensure(carrier == sylow_intersection_carrier(a5), "L_Delta(A5) carrier differs from the Sylow-intersection oracle")?;
    let h = a5.group.subgroup_from_elements(carrier.iter().copied()).map_err(|_| "L_Delta(A5) carrier is not a subgroup")?;
    ensure(h.order() == 12 && h == a5.group.normalizer(&a5.s), format!("L_Delta(A5) carrier has order {}", h.order()))?;
    ensure(h.elements().all(|x| a5.group.element_order(x) != 6) && a5.group.cores_of(&h, 2).o_p.order() == 4, "L_Delta(A5) carrier is not A4")?;
    Ok("S4 of characteristic 2-type; L_Delta(S4) verifies, objective char 2, fusion = F_D8(S4), carrier S4 (24); L_Delta(A5) carrier A4 (12)".into())
}

fn norm_and_radical(c: &Corpus) -> Outcome {
    let (norm, nf, _) = tally(&c.results, "NormLF");
    let (rad, rf, _) = tally(&c.results, "RadicalLF");
    ensure(nf.is_empty() && rf.is_empty(), format!("NormLF {nf:?}, RadicalLF {rf:?}"))?;
    let objective = c.results.iter().filter(|r| r.check_id == "ObjCharp" && r.status == Status::Pass).count();
    ensure(norm == objective && rad == objective, format!("NormLF {norm} and RadicalLF {rad} passes for {objective} objective localities"))?;

    let s4 = &instance(c, "S4@2").setting;
    let l = s4.locality(&s4.nontrivial()).map_err(|e| e.to_string())?;
    let mut radical = BTreeSet::new();
    for p in l.objects() {
        if l.is_l_radical(p).map_err(|e| e.to_string())? {
            radical.insert(p);
        }
    }
    let v = s4.lattice_index(&s4.group.o_p(2)).expect("O_2(S4) <= S");
    let expected: BTreeSet<usize> = [v, s4.fusion.whole()].into();
    ensure(radical == expected, format!("L-radical objects of L_Delta(S4): {radical:?}, expected V and D8 {expected:?}"))?;
    Ok(format!("NormLF and RadicalLF hold on all {objective} objective characteristic p localities; S4: radical objects = {{V, D8}}"))
}

fn theta_machinery(c: &Corpus) -> Outcome {
    let (pass, fails, skipped) = tally(&c.results, "Theta");
    ensure(fails.is_empty() && skipped == 0 && pass == c.instances.len(), format!("Theta: {fails:?}, {skipped} skipped"))?;
    let (pp, pf, ps) = tally(&c.results, "LocalityProjection");
    ensure(pf.is_empty() && ps == 0 && pp == c.instances.len(), format!("LocalityProjection: {pf:?}"))?;
    let mut orders = Vec::new();
    for inst in &c.instances {
        let sets = DeltaSets::new(&inst.setting);
        let t = theta_quotient(&inst.setting, &sets).map_err(|e| e.to_string())?;
        let src = &t.source;
        ensure((1..src.s().order()).all(|x| !t.theta.contains(src.s_id(x))), format!("{}: Theta meets S", inst.subject()))?;
        src.check_partial_normal(&t.theta).map_err(|e| format!("{}: {e}", inst.subject()))?;
        let q = &t.quotient.locality;
        let fq = q.fusion_system().map_err(|e| e.to_string())?;
        ensure(q.is_linking_locality(&fq), format!("{}: quotient is not a linking locality", inst.subject()))?;
        for (p, kernel) in &t.kernels {
            let n = inst.setting.group.normalizer(&object_in_group(src, &inst.setting, *p));
            let theta_n = inst.setting.group.cores_of(&n, inst.setting.p).o_p_prime;
            let want: BTreeSet<usize> = theta_n.elements().collect();
            let have: BTreeSet<usize> = kernel.iter().map(|f| src.label(f)).collect();
            ensure(want == have, format!("{}: kernel on N_L(P{p}) is not Theta(N_G(P))", inst.subject()))?;
        }
        orders.push(format!("{}:{}", inst.subject(), t.theta.count()));
    }
    Ok(format!(
        "Theta cap S = 1, partial normal, linking quotient over F_S(G), kernels = Theta(N_G(P)) on {} groups; |Theta| {}",
        c.instances.len(),
        orders.join(" ")
    ))
}

fn object_in_group(l: &fusionloc_core::locality::Locality, setting: &Setting, p: usize) -> Subgroup {
    Subgroup::from_bits_unchecked(BitSet::from_iter(setting.group.order(), l.lattice().get(p).elems.iter().map(|&x| l.label(l.s_id(x)))))
}

fn quotient_correspondence(c: &Corpus) -> Outcome {
    let inst = instance(c, "C2xS4@2");
    let f = &inst.setting.fusion;
    let z = central_subgroup(inst);
    ensure(f.central_subgroups().contains(&z) && f.order_of(z) == 2, "central C2 is not in Z(F)")?;
    let q = f.quotient_by_central(z).map_err(|e| e.to_string())?;
    ensure(q.system.is_saturated(), "F/Z is not saturated")?;
    let n = f.lattice().len();
    for p in 0..n {
        let (a, b) = (f.is_subcentric(p), q.system.is_subcentric(q.lattice_map[p]));
        ensure(a == b, format!("P{p}: subcentric in F {a}, PZ/Z subcentric in F/Z {b}"))?;
    }
    let r = c.results.iter().find(|r| r.check_id == "P1.5b" && r.subject == "C2xS4@2").expect("P1.5b result");
    ensure(r.status == Status::Pass, format!("verifier P1.5b: {:?}", r.status))?;
    Ok(format!("subcentric flags of P and PZ/Z agree for all {n} subgroups of C2xD8"))
}

fn centralizers_of_normal_subsystems(c: &Corpus) -> Outcome {
    for id in ["CENThm", "SubcentricEF"] {
        let (_, fails, _) = tally(&c.results, id);
        ensure(fails.is_empty(), format!("{id}: {fails:?}"))?;
    }
    let mut cases = 0;
    for inst in &c.instances {
        let setting = &inst.setting;
        let f = &setting.fusion;
        let sets = DeltaSets::new(setting);
        let t = theta_quotient(setting, &sets).map_err(|e| e.to_string())?;
        let case = theta_case(&inst.subject(), setting, &t);
        let l = &case.locality;
        let fl = l.fusion_system().map_err(|e| e.to_string())?;
        ensure(l.is_linking_locality(&fl), format!("{}: not a linking locality", inst.subject()))?;
        for (n0, nbits) in &case.normals {
            let label = format!("{} N0 of order {}", inst.subject(), n0.order());
            let t_n = n0.intersection(&setting.s);
            ensure(setting.group.is_sylow_in(&t_n, n0, setting.p), format!("{label}: T not Sylow in N0"))?;
            l.check_partial_normal(nbits).map_err(|e| format!("{label}: {e}"))?;
            let e = f.normal_subgroup_system(&setting.group, &setting.s, n0).map_err(|e| format!("{label}: {e}"))?;
            let cse = f.centralizer_of_subsystem(&e).map_err(|e| format!("{label}: {e}"))?;
            let from_fusion: BTreeSet<usize> = f.elems(cse).iter().map(|&x| case.s_map[x]).collect();
            let members: Vec<usize> = nbits.iter().collect();
            let from_locality: BTreeSet<usize> = (0..l.s().order()).filter(|&x| members.iter().all(|&n| l.conjugate(n, l.s_id(x)) == Ok(n))).collect();
            ensure(from_fusion == from_locality, format!("{label}: C_S(E) has order {}, C_S(N) has order {}", from_fusion.len(), from_locality.len()))?;
            for p in 0..e.system.lattice().len() {
                if e.system.is_subcentric(p) {
                    let pc = f.lattice().join(f.s(), e.to_parent(f, p), cse);
                    ensure(f.is_subcentric(pc), format!("{label}: P{p} subcentric in E but P C_S(E) not subcentric in F"))?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("C_S(F_T(N)) = C_S(N cap L) and P in E^s => P C_S(E) in F^s for all {cases} normal subgroups N of corpus groups"))
}

fn mutation_sensitivity(c: &Corpus) -> Outcome {
    let (mut total, mut detected) = (0usize, 0usize);
    let mut missed = Vec::new();
    for inst in &c.instances {
        let mut mutants = fusion_mutants(inst, MUTANTS_PER_INSTANCE, MUTATION_SEED);
        mutants.extend(locality_mutants(inst, MUTANTS_PER_INSTANCE, MUTATION_SEED).map_err(|e| e.to_string())?);
        ensure(mutants.len() == 2 * MUTANTS_PER_INSTANCE, format!("{}: {} mutants", inst.subject(), mutants.len()))?;
        for m in mutants {
            total += 1;
            if m.detected() {
                detected += 1;
            } else {
                missed.push(m.label);
            }
        }
    }
    let rate = detected as f64 / total as f64;
    ensure(rate >= MUTATION_DETECTION, format!("{detected}/{total} detected; missed {missed:?}"))?;
    Ok(format!("{detected}/{total} mutants detected (seed {MUTATION_SEED}, {MUTANTS_PER_INSTANCE} fusion + {MUTANTS_PER_INSTANCE} locality per instance)"))
}

fn determinism(_: &Corpus) -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_fusionloc")).args(["corpus", "--json"]).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("corpus run exited with {:?}", out.status.code()))?;
        Ok::<_, String>(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, "two corpus reports differ")?;
    Ok(format!("two corpus runs produced identical {}-byte JSON reports", a.len()))
}

fn main() {
    let instances = builtin_instances(DEFAULT_ORDER_BOUND).expect("builtin corpus");
    let start = Instant::now();
    let results = run_all(&instances);
    let corpus = Corpus { instances, results, elapsed: start.elapsed() };

    let criteria: [Criterion; 10] = [
        ("inclusion chain", inclusion_chain),
        ("subcentric equivalences", subcentric_equivalences),
        ("Delta and Delta* examples", group_examples),
        ("characteristic 2-type example", characteristic_2_type_localities),
        ("normal and radical subgroups via L", norm_and_radical),
        ("Theta quotient", theta_machinery),
        ("central quotient correspondence", quotient_correspondence),
        ("centralizers of normal subsystems", centralizers_of_normal_subsystems),
        ("mutation sensitivity", mutation_sensitivity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&corpus) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

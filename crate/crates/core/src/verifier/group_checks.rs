use super::fusion_checks::subcentric_set;
use super::{sub_label, CheckResult, Recorder, Status};
use crate::bitset::BitSet;
use crate::constructions::{is_characteristic_p_type_fusion, DeltaSets, Setting};
use crate::fusion::FusionSystem;
use crate::group::{is_power_of, FiniteGroup, Lattice, Subgroup};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A group examined by the characteristic-p checks: `G` itself or a
/// p-local subgroup, carried as a standalone group with a Sylow subgroup and
/// the subgroups of that Sylow subgroup.
struct TestGroup {
    label: String,
    group: FiniteGroup,
    sylow: Subgroup,
    p_subgroups: Vec<Subgroup>,
}

impl TestGroup {
    fn new(label: String, group: FiniteGroup, p: u64) -> Self {
        let sylow = group.sylow(p);
        let (sg, embed) = group.subgroup_group(&sylow);
        let lat = Lattice::new(&sg);
        let p_subgroups =
            (0..lat.len()).map(|i| Subgroup::from_bits_unchecked(BitSet::from_iter(group.order(), lat.get(i).elems.iter().map(|&x| embed[x])))).collect();
        TestGroup { label, group, sylow, p_subgroups }
    }
}

fn test_groups(setting: &Setting) -> Vec<TestGroup> {
    let f = &setting.fusion;
    let mut out = alloc::vec![TestGroup::new("G".into(), setting.group.clone(), setting.p)];
    for class in f.classes() {
        if f.order_of(class[0]) == 1 {
            continue;
        }
        let n = setting.local_normalizer(class[0]);
        let (ng, _) = setting.group.subgroup_group(&n);
        out.push(TestGroup::new(format!("N_G({})", sub_label(f, class[0])), ng, setting.p));
    }
    out
}

/// Subnormal subgroups of `g` as element sets of `g`.
fn subnormal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    let mut stack = alloc::vec![g.whole()];
    while let Some(k) = stack.pop() {
        if !seen.insert(k.bits().clone()) {
            continue;
        }
        let (kg, embed) = g.subgroup_group(&k);
        for m in kg.normal_subgroups() {
            stack.push(Subgroup::from_bits_unchecked(BitSet::from_iter(g.order(), m.elements().map(|x| embed[x]))));
        }
    }
    seen.into_iter().map(Subgroup::from_bits_unchecked).collect()
}

fn charp1(t: &TestGroup, p: u64) -> Option<String> {
    let g = &t.group;
    for q in t.p_subgroups.iter().filter(|q| !q.is_trivial()) {
        if !g.cores_of(&g.normalizer(q), p).is_char_p {
            return Some(format!("{}: N_H(Q) not of characteristic p for Q of order {}", t.label, q.order()));
        }
        if !g.cores_of(&g.centralizer(q), p).is_char_p {
            return Some(format!("{}: C_H(Q) not of characteristic p for Q of order {}", t.label, q.order()));
        }
    }
    subnormal_subgroups(g)
        .into_iter()
        .find(|k| !g.cores_of(k, p).is_char_p)
        .map(|k| format!("{}: subnormal subgroup of order {} not of characteristic p", t.label, k.order()))
}

fn charp_central(t: &TestGroup, p: u64) -> Option<String> {
    let g = &t.group;
    let op = g.o_p(p);
    let (zg, embed) = g.subgroup_group(&g.center());
    let lat = Lattice::new(&zg);
    for i in 0..lat.len() {
        let z = Subgroup::from_bits_unchecked(BitSet::from_iter(g.order(), lat.get(i).elems.iter().map(|&x| embed[x])));
        if !z.is_subgroup_of(&op) {
            return Some(format!("{}: central subgroup of order {} not in O_p", t.label, z.order()));
        }
        let q = g.quotient(&z).expect("central subgroups are normal");
        if !q.group.is_char_p(p) {
            return Some(format!("{}: quotient by a central subgroup of order {} not of characteristic p", t.label, z.order()));
        }
    }
    None
}

/// For each normal p-subgroup `P` of `H` with `F_{C_S(P)}(C_H(P))` inner:
/// `C_H(P) = C_S(P) O_p'(C_H(P))`, and `H` has characteristic p exactly when
/// `C_H(P)` is a p-group. Returns the number of cases meeting the hypothesis.
fn charp2(t: &TestGroup, p: u64) -> Result<usize, String> {
    let g = &t.group;
    let op = g.o_p(p);
    let char_p = g.is_char_p(p);
    let mut cases = 0;
    for n in g.normal_subgroups().into_iter().filter(|n| n.is_subgroup_of(&op)) {
        let c = g.centralizer(&n);
        let cs = c.intersection(&t.sylow);
        let all = FusionSystem::from_conjugation(g, &cs, c.elements(), p).map_err(|e| format!("{e}"))?;
        let inner = FusionSystem::from_conjugation(g, &cs, cs.elements(), p).map_err(|e| format!("{e}"))?;
        if all.morphism_count() != inner.morphism_count() {
            continue;
        }
        cases += 1;
        let opp = g.cores_of(&c, p).o_p_prime;
        if g.join(&cs, &opp) != c {
            return Err(format!("{}: C_H(P) != C_S(P) O_p'(C_H(P)) for P of order {}", t.label, n.order()));
        }
        if char_p != is_power_of(c.order(), p) {
            return Err(format!("{}: characteristic p is {char_p} but C_H(P) has order {} for P of order {}", t.label, c.order(), n.order()));
        }
    }
    Ok(cases)
}

pub fn run_group_checks(subject: &str, setting: &Setting, sets: &DeltaSets) -> Vec<CheckResult> {
    let mut rec = Recorder::new(subject);
    let p = setting.p;
    let f = &setting.fusion;
    let groups = test_groups(setting);

    rec.check("Charp1", || groups.iter().filter(|t| t.group.is_char_p(p)).find_map(|t| charp1(t, p)).map_or(Status::Pass, Status::fail));
    rec.check("CharpCentral", || groups.iter().filter(|t| t.group.is_char_p(p)).find_map(|t| charp_central(t, p)).map_or(Status::Pass, Status::fail));
    rec.check("AlmostCharpNormCent", || {
        for i in 0..f.lattice().len() {
            let q = setting.in_group(i);
            let n = setting.group.cores_of(&setting.group.normalizer(&q), p);
            let c = setting.group.cores_of(&setting.group.centralizer(&q), p);
            if n.is_char_p != c.is_char_p || n.is_almost_char_p != c.is_almost_char_p {
                return Status::fail(format!(
                    "{}: N_G char p {} almost {}, C_G char p {} almost {}",
                    sub_label(f, i),
                    n.is_char_p,
                    n.is_almost_char_p,
                    c.is_char_p,
                    c.is_almost_char_p
                ));
            }
        }
        Status::Pass
    });
    rec.check("Charp2", || {
        for t in &groups {
            if let Err(w) = charp2(t, p) {
                return Status::fail(w);
            }
        }
        Status::Pass
    });
    rec.check("Delta", || sets.invariant_violation(f).map_or(Status::Pass, Status::fail));

    let group_type = setting.is_characteristic_p_type();
    rec.check("CharpType", || match is_characteristic_p_type_fusion(f) {
        Err(e) => Status::fail(format!("{e}")),
        Ok(fusion_type) if group_type && !fusion_type => Status::fail("G is of characteristic p-type but F_S(G) is not"),
        Ok(_) => Status::Pass,
    });
    rec.check("Ex1.4", || {
        if !group_type {
            return Status::skipped("G is not of characteristic p-type");
        }
        nontrivial_subgroup_locality(setting).into()
    });
    rec.results
}

/// `L_Delta(G)` on the nontrivial subgroups is an objective characteristic p
/// linking locality over `F_S(G)` whose objects are subcentric.
fn nontrivial_subgroup_locality(setting: &Setting) -> Result<(), String> {
    let f = &setting.fusion;
    let objects = setting.nontrivial();
    if objects.is_empty() {
        return Ok(());
    }
    let l = setting.locality(&objects).map_err(|e| format!("construction failed: {e}"))?;
    l.verify(&Default::default()).map_err(|v| format!("axiom {}: {}", v.axiom, v.witness))?;
    match l.objective_char_p_witness() {
        Ok(None) => {}
        Ok(Some(p)) => return Err(format!("N_L({}) is not of characteristic p", sub_label(f, p))),
        Err(e) => return Err(format!("{e}")),
    }
    let lf = l.fusion_system().map_err(|e| format!("{e}"))?;
    let id: Vec<usize> = (0..f.s().order()).collect();
    if lf.morphism_set(&id) != f.morphism_set(&id) {
        return Err("fusion system of the locality differs from F_S(G)".into());
    }
    if !l.is_linking_locality(f) {
        return Err("not a linking locality".into());
    }
    let sub = subcentric_set(f);
    if let Some(p) = objects.iter().find(|&p| !sub.contains(p)) {
        return Err(format!("object {} is not subcentric", sub_label(f, p)));
    }
    Ok(())
}

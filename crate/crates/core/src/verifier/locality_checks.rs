use super::{sub_label, CheckResult, Recorder, Status};
use crate::bitset::BitSet;
use crate::constructions::{Setting, ThetaData};
use crate::fusion::{FusionSystem, NormalityRule, Subsystem, NONE};
use crate::group::{is_power_of, p_part, Subgroup};
use crate::locality::Locality;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A locality to examine, with `s_map[x]` the element of its `S` that
/// corresponds to element `x` of the setting's `S`, and for each normal
/// subgroup `N_0` of `G` the induced subset of the carrier. When
/// `objective_expected` is false, a locality that is not of objective
/// characteristic p is reported as skipped rather than failed.
#[derive(Clone, Debug)]
pub struct LocalityCase {
    pub subject: String,
    pub locality: Locality,
    pub s_map: Vec<usize>,
    pub normals: Vec<(Subgroup, BitSet)>,
    pub objective_expected: bool,
}

type Check = Result<(), String>;

pub fn run_locality_checks(case: &LocalityCase, setting: &Setting, fusion_ok: bool) -> Vec<CheckResult> {
    let l = &case.locality;
    let mut rec = Recorder::new(case.subject.clone());
    if !rec.check("Loc.Axioms", || l.verify(&Default::default()).map_err(|v| format!("axiom {}: {}", v.axiom, v.witness)).into()) {
        rec.block("locality axioms fail");
    }
    let fl = if rec.is_blocked() { None } else { l.fusion_system().ok() };
    if !rec.check("Loc.Fusion", || match &fl {
        None => Status::fail("fusion system of the locality could not be generated"),
        Some(fl) => fusion_matches(fl, &setting.fusion, &case.s_map).into(),
    }) {
        rec.block("fusion system of the locality does not match F_S(G)");
    }
    if !fusion_ok {
        rec.block("F_S(G) fails its own checks");
    }
    let f = fl.as_ref();
    let objective = rec.check("ObjCharp", || match l.objective_char_p_witness() {
        Ok(None) => Status::Pass,
        Ok(Some(p)) if case.objective_expected => Status::fail(format!("N_L({}) is not of characteristic p", sub_label(f.expect("fusion"), p))),
        Ok(Some(p)) => Status::skipped(format!("objects outside Delta; N_L({}) is not of characteristic p", sub_label(f.expect("fusion"), p))),
        Err(e) => Status::fail(format!("{e}")),
    });
    rec.check("LocalitiesProp", || localities_prop(l, f.expect("fusion")).into());
    rec.check("TLDelta", || transporter(l, f.expect("fusion")).into());
    rec.check("R1.3c", || quasicentric_objective(l, f.expect("fusion")));
    rec.check("R1.3d", || centric_objective(l, f.expect("fusion")));
    if !objective {
        rec.block("locality is not of objective characteristic p");
    }
    rec.check("NormLF", || norm_lf(l, f.expect("fusion")).into());
    rec.check("RadicalLF", || radical_lf(l, f.expect("fusion")).into());
    rec.check("NormModel", || norm_model(l, f.expect("fusion")).into());
    rec.check("CENThm", || {
        let f = f.expect("fusion");
        if !l.is_linking_locality(f) {
            return Status::skipped("not a linking locality");
        }
        centralizer_of_normal_subsystem(case, setting, f)
    });
    rec.results
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn fusion_matches(fl: &FusionSystem, f: &FusionSystem, s_map: &[usize]) -> Check {
    if fl.s().order() != f.s().order() {
        return Err(format!("|S| is {}, expected {}", fl.s().order(), f.s().order()));
    }
    let have = fl.morphism_set(&identity(fl.s().order()));
    let want = f.morphism_set(s_map);
    if have != want {
        let extra = have.difference(&want).count();
        let missing = want.difference(&have).count();
        return Err(format!("{extra} extra and {missing} missing morphisms"));
    }
    Ok(())
}

fn elems_in_l(l: &Locality, p: usize) -> BTreeSet<usize> {
    l.lattice().get(p).elems.iter().map(|&x| l.s_id(x)).collect()
}

/// `Q` normal in `F` iff `L = N_L(Q)`; `Q <= Z(F)` iff `L = C_L(Q)`.
fn norm_lf(l: &Locality, f: &FusionSystem) -> Check {
    let normal: BTreeSet<usize> = f.normal_subgroups(NormalityRule::Criterion).into_iter().collect();
    let central: BTreeSet<usize> = f.central_subgroups().into_iter().collect();
    for q in 0..f.lattice().len() {
        let n_all = l.normalizer_ids(q).len() == l.size();
        if normal.contains(&q) != n_all {
            return Err(format!("{}: normal in F {}, N_L(Q) = L {n_all}", sub_label(f, q), normal.contains(&q)));
        }
        let c_all = l.centralizer_ids(q).len() == l.size();
        if central.contains(&q) != c_all {
            return Err(format!("{}: central in F {}, C_L(Q) = L {c_all}", sub_label(f, q), central.contains(&q)));
        }
    }
    Ok(())
}

fn radical_lf(l: &Locality, f: &FusionSystem) -> Check {
    for p in l.objects() {
        let radical = l.is_l_radical(p).map_err(|e| format!("{e}"))?;
        let cr = f.is_centric(p) && f.is_radical(p);
        if radical != cr {
            return Err(format!("{}: L-radical {radical}, centric radical {cr}", sub_label(f, p)));
        }
    }
    Ok(())
}

/// For `P` in `Delta` fully normalized, `N_L(P)` is a model for `N_F(P)`;
/// every object is subcentric.
fn norm_model(l: &Locality, f: &FusionSystem) -> Check {
    let p = f.prime();
    for q in l.objects() {
        if !f.is_subcentric(q) {
            return Err(format!("object {} is not subcentric", sub_label(f, q)));
        }
        if !f.is_fully_normalized(q) {
            continue;
        }
        let lg = l.normalizer_group(q).map_err(|e| format!("{e}"))?;
        if !lg.group.is_char_p(p) {
            return Err(format!("N_L({}) is not of characteristic p", sub_label(f, q)));
        }
        let ns = f.lattice().get(q).normalizer;
        let ns_local = l.local_subgroup_of_s(&lg, ns);
        if p_part(lg.group.order(), p) != ns_local.order() {
            return Err(format!("N_S({}) is not Sylow in N_L(P)", sub_label(f, q)));
        }
        let model = FusionSystem::from_conjugation(&lg.group, &ns_local, 0..lg.group.order(), p).map_err(|e| format!("{e}"))?;
        let embed: Vec<usize> = ns_local.elements().map(|i| l.s_elem(lg.ids[i]).expect("element of S")).collect();
        if model.morphism_set(&embed) != f.normalizer_system(q).morphism_set() {
            return Err(format!("F_{{N_S(P)}}(N_L(P)) differs from N_F(P) at {}", sub_label(f, q)));
        }
    }
    Ok(())
}

fn quasicentric_objective(l: &Locality, f: &FusionSystem) -> Status {
    let p = f.prime();
    let objects = l.objects();
    if let Some(&q) = objects.iter().find(|&&q| !f.is_quasicentric(q)) {
        return Status::skipped(format!("object {} is not quasicentric", sub_label(f, q)));
    }
    let mut all_p = true;
    for &q in &objects {
        let cg = match l.centralizer_group(q) {
            Ok(cg) => cg,
            Err(e) => return Status::fail(format!("C_L({}): {e}", sub_label(f, q))),
        };
        all_p &= is_power_of(cg.group.order(), p);
        if f.is_fully_normalized(q) {
            let cs = l.local_subgroup_of_s(&cg, f.lattice().get(q).centralizer);
            let opp = cg.group.o_p_prime(p);
            if cg.group.join(&cs, &opp) != cg.group.whole() {
                return Status::fail(format!("C_L({}) != C_S(P) O_p'(C_L(P))", sub_label(f, q)));
            }
        }
    }
    if all_p != l.is_objective_char_p() {
        return Status::fail(format!("objective characteristic p is {}, all C_L(P) p-groups is {all_p}", l.is_objective_char_p()));
    }
    Status::Pass
}

fn centric_objective(l: &Locality, f: &FusionSystem) -> Status {
    let objects = l.objects();
    if let Some(&q) = objects.iter().find(|&&q| !f.is_centric(q)) {
        return Status::skipped(format!("object {} is not centric", sub_label(f, q)));
    }
    let self_centralizing = objects.iter().all(|&q| {
        let pe = elems_in_l(l, q);
        l.centralizer_ids(q).iter().all(|c| pe.contains(c))
    });
    if self_centralizing != l.is_objective_char_p() {
        return Status::fail(format!("objective characteristic p is {}, C_L(P) <= P for all objects is {self_centralizing}", l.is_objective_char_p()));
    }
    Status::Pass
}

fn localities_prop(l: &Locality, f: &FusionSystem) -> Check {
    let lat = l.lattice();
    let objects = l.objects();
    let mut normalizers: Vec<Option<Vec<usize>>> = alloc::vec![None; lat.len()];
    for &q in &objects {
        let lg = l.normalizer_group(q).map_err(|e| format!("(a) N_L({}) is not a subgroup: {e}", sub_label(f, q)))?;
        let gens: Vec<usize> = lg.group.generators().iter().map(|&i| lg.ids[i]).collect();
        normalizers[q] = Some(gens);
        let nsq = lat.get(q).normalizer;
        let sylow = p_part(lg.group.order(), l.prime()) == lat.order(nsq);
        if sylow != f.is_fully_normalized(q) {
            return Err(format!("(g) {}: fully normalized {}, N_S(P) Sylow in N_L(P) {sylow}", sub_label(f, q), f.is_fully_normalized(q)));
        }
    }
    for g in 0..l.size() {
        let sg = lat.index_of_bits(&l.s_f(g)).ok_or_else(|| format!("(d) S_f is not a subgroup for f={g}"))?;
        if !l.is_object(sg) {
            return Err(format!("(d) S_f is not an object for f={g}"));
        }
        let ginv = l.inv(g);
        let back = lat.index_of_bits(&l.s_f(ginv));
        if l.conjugate_subgroup(sg, g) != back {
            return Err(format!("(d) S_f^f != S_(f^-1) for f={g}"));
        }
        let (c, ci) = (l.conj_map(g), l.conj_map(ginv));
        if let Some(x) = l.s_f(g).iter().find(|&x| ci[c[x] as usize] as usize != x) {
            return Err(format!("(e) c_(f^-1) c_f moves s{x} for f={g}"));
        }
        for &q in objects.iter().filter(|&&q| lat.is_sub(q, sg)) {
            let image = l.conjugate_subgroup(q, g).ok_or_else(|| format!("(b) P^f undefined for f={g}"))?;
            if !l.is_object(image) {
                return Err(format!("(b) {}^f is not an object for f={g}", sub_label(f, q)));
            }
            let members = l.normalizer_ids(q);
            let target: BTreeSet<usize> = l.normalizer_ids(image).into_iter().collect();
            let mut seen = BTreeSet::new();
            for &n in &members {
                let m = l.conjugate(n, g).map_err(|_| format!("(b) N_L({}) not inside D(f) for f={g}", sub_label(f, q)))?;
                if !target.contains(&m) || !seen.insert(m) {
                    return Err(format!("(b) c_f is not a bijection N_L({}) -> N_L(P^f) for f={g}", sub_label(f, q)));
                }
            }
            if seen.len() != target.len() {
                return Err(format!("(b) c_f is not onto N_L(P^f) for P = {}, f={g}", sub_label(f, q)));
            }
            for &n in &members {
                for &h in normalizers[q].as_ref().expect("object") {
                    let nh = l.product2(n, h).ok_or_else(|| format!("(a) N_L({}) not closed", sub_label(f, q)))?;
                    let lhs = l.conjugate(nh, g).map_err(|_| format!("(b) conjugation undefined for f={g}"))?;
                    let rhs = l.product2(l.conjugate(n, g).expect("checked"), l.conjugate(h, g).expect("checked"));
                    if Some(lhs) != rhs {
                        return Err(format!("(c) c_f is not a homomorphism on N_L({}) for f={g}", sub_label(f, q)));
                    }
                }
            }
        }
    }
    let n = l.size();
    let check_word = |w: &[usize]| -> Check {
        if !l.in_domain(w) {
            return Ok(());
        }
        let prod = l.fold(w).ok_or_else(|| format!("(f) product of {w:?} missing"))?;
        let sw = l.s_w(w);
        if !sw.is_subset(&l.s_f(prod)) {
            return Err(format!("(f) S_w is not inside S_Pi(w) for w={w:?}"));
        }
        let direct = l.conj_map(prod);
        for x in sw.iter() {
            let chained = w.iter().fold(x, |y, &g| l.conj_map(g)[y] as usize);
            if chained != direct[x] as usize {
                return Err(format!("(c) c_w differs from c_Pi(w) at s{x} for w={w:?}"));
            }
        }
        Ok(())
    };
    for a in 0..n {
        for b in 0..n {
            check_word(&[a, b])?;
        }
    }
    for a in 0..n {
        for b in (0..n).filter(|&b| l.product2(a, b).is_some()) {
            for c in 0..n {
                check_word(&[a, b, c])?;
            }
        }
    }
    Ok(())
}

/// The transporter category of `L` is a transporter system with
/// `Aut(P) = N_L(P)` and `E(P) = C_L(P)`, and it is a linking system exactly
/// when `L` is a linking locality.
fn transporter(l: &Locality, f: &FusionSystem) -> Check {
    let t = l.transporter_category();
    t.verify(l)?;
    let mut linking = f.centric_radicals().into_iter().all(|r| t.objects.contains(&r));
    for (i, &p) in t.objects.iter().enumerate() {
        let auts: Vec<usize> = t.hom(p, p).map(|m| m.f).collect();
        if auts.len() != t.aut_orders[i] {
            return Err(format!("|Aut_T({})| differs from |N_L(P)|", sub_label(f, p)));
        }
        let g = l.group_on(auts).map_err(|e| format!("{e}"))?;
        linking &= g.group.is_char_p(l.prime());
    }
    if linking != l.is_linking_locality(f) {
        return Err(format!("transporter system linking {linking}, locality linking {}", l.is_linking_locality(f)));
    }
    Ok(())
}

/// `F_T(N)` for a partial normal subgroup `N` of `L`, as a subsystem of `f`
/// (which lives on the same `S`).
fn generated_subsystem(l: &Locality, f: &FusionSystem, n: &BitSet) -> Result<Subsystem, String> {
    let m = l.s().order();
    let tbits = BitSet::from_iter(m, (0..m).filter(|&x| n.contains(l.s_id(x))));
    let t = l.lattice().index_of_bits(&tbits).ok_or("S cap N is not a subgroup")?;
    let (tg, embed) = l.s().subgroup_group(l.lattice().sub(t));
    let mut pos = alloc::vec![NONE; m];
    for (i, &x) in embed.iter().enumerate() {
        pos[x] = i as u16;
    }
    let mut gens: BTreeSet<Vec<u16>> = BTreeSet::new();
    for g in n.iter() {
        let c = l.conj_map(g);
        let mut map = alloc::vec![NONE; embed.len()];
        for (i, &x) in embed.iter().enumerate() {
            if c[x] != NONE {
                let y = pos[c[x] as usize];
                if y == NONE {
                    return Err(format!("conjugation by {g} moves T outside T"));
                }
                map[i] = y;
            }
        }
        gens.insert(map);
    }
    let system = FusionSystem::generate(tg, f.prime(), gens.into_iter().collect()).map_err(|e| format!("{e}"))?;
    Ok(Subsystem { system, embed, t })
}

/// `C_S(F_T(N)) = C_S(N)` for each `N` induced by a normal subgroup of `G`.
fn centralizer_of_normal_subsystem(case: &LocalityCase, setting: &Setting, f: &FusionSystem) -> Status {
    let l = &case.locality;
    let mut met = 0;
    for (n0, n) in &case.normals {
        let label = format!("N0 of order {}", n0.order());
        if let Err(e) = l.check_partial_normal(n) {
            return Status::fail(format!("{label}: induced subset is not partial normal: {e}"));
        }
        let e = match generated_subsystem(l, f, n) {
            Ok(e) => e,
            Err(w) => return Status::fail(format!("{label}: {w}")),
        };
        let group_e = match setting.fusion.normal_subgroup_system(&setting.group, &setting.s, n0) {
            Ok(ge) => ge,
            Err(err) => return Status::fail(format!("{label}: F_T(N0) failed: {err}")),
        };
        let mapped: Vec<usize> = group_e.embed.iter().map(|&x| case.s_map[x]).collect();
        if group_e.system.morphism_set(&mapped) != e.morphism_set() {
            continue;
        }
        met += 1;
        let cse = match f.centralizer_of_subsystem(&e) {
            Ok(c) => c,
            Err(err) => return Status::fail(format!("{label}: C_S(E) failed: {err}")),
        };
        let m = l.s().order();
        let members = n.to_vec();
        let csn = BitSet::from_iter(m, (0..m).filter(|&x| members.iter().all(|&y| l.conjugate(y, l.s_id(x)) == Ok(y))));
        if l.lattice().index_of_bits(&csn) != Some(cse) {
            return Status::fail(format!("{label}: C_S(E) = {} but C_S(N) has order {}", sub_label(f, cse), csn.count()));
        }
    }
    if met == 0 && !case.normals.is_empty() {
        return Status::skipped("no induced partial normal subgroup realizes F_T(N0)");
    }
    Status::Pass
}

/// `Theta cap S = 1`, the kernel of the projection on each `N_L(P)` is
/// `Theta(P)` with `N_L(P)/Theta(P)` the normalizer in the quotient, and the
/// quotient is a linking locality over `F_S(G)`.
pub(crate) fn theta_status(setting: &Setting, t: &ThetaData) -> Status {
    theta_check(setting, t).into()
}

fn theta_check(setting: &Setting, t: &ThetaData) -> Check {
    let src = &t.source;
    let q = &t.quotient.locality;
    let proj = &t.quotient.projection;
    let m = src.s().order();
    if let Some(x) = (1..m).find(|&x| t.theta.contains(src.s_id(x))) {
        return Err(format!("Theta meets S in s{x}"));
    }
    let qlat = q.lattice();
    for (p, kernel) in &t.kernels {
        let members = src.normalizer_ids(*p);
        let ker = BitSet::from_iter(src.size(), members.iter().copied().filter(|&f| proj[f] == 0));
        if &ker != kernel {
            return Err(format!("kernel on N_L(P{p}) is not Theta(P{p})"));
        }
        let img = BitSet::from_iter(q.s().order(), src.lattice().get(*p).elems.iter().map(|&x| t.quotient.s_projection[x]));
        let pb = qlat.index_of_bits(&img).ok_or("image of an object is not a subgroup")?;
        if members.len() / kernel.count() != q.normalizer_ids(pb).len() || !members.len().is_multiple_of(kernel.count()) {
            return Err(format!("N_L(P{p})/Theta(P{p}) does not match the normalizer in the quotient"));
        }
    }
    q.verify(&Default::default()).map_err(|v| format!("quotient fails axiom {}: {}", v.axiom, v.witness))?;
    let fq = q.fusion_system().map_err(|e| format!("{e}"))?;
    fusion_matches(&fq, &setting.fusion, &t.quotient.s_projection)?;
    if !q.is_objective_char_p() {
        return Err("quotient is not of objective characteristic p".into());
    }
    if !q.is_linking_locality(&fq) {
        return Err("quotient is not a linking locality".into());
    }
    Ok(())
}

/// The projection `L -> L/Theta` maps the domain onto the quotient domain,
/// objects onto objects, `N_L(P)` onto `N_{L/Theta}(P)`, and induces an
/// isomorphism of fusion systems.
pub(crate) fn projection_status(t: &ThetaData) -> Status {
    projection_check(t).into()
}

fn projection_check(t: &ThetaData) -> Check {
    let src = &t.source;
    let q = &t.quotient.locality;
    let proj = &t.quotient.projection;
    let sp = &t.quotient.s_projection;
    let mut image_pairs = BTreeSet::new();
    for f in 0..src.size() {
        for g in 0..src.size() {
            if let Some(h) = src.product2(f, g) {
                if q.product2(proj[f], proj[g]) != Some(proj[h]) {
                    return Err(format!("projection is not a homomorphism at ({f}, {g})"));
                }
                image_pairs.insert((proj[f], proj[g]));
            }
        }
    }
    let defined = (0..q.size()).flat_map(|a| (0..q.size()).map(move |b| (a, b))).filter(|&(a, b)| q.product2(a, b).is_some()).count();
    if defined != image_pairs.len() {
        return Err("quotient domain is not the image of the domain".into());
    }
    let qlat = q.lattice();
    let image_of = |p: usize| qlat.index_of_bits(&BitSet::from_iter(q.s().order(), src.lattice().get(p).elems.iter().map(|&x| sp[x])));
    let mut objects = BitSet::new(qlat.len());
    for p in src.objects() {
        let pb = image_of(p).ok_or("image of an object is not a subgroup")?;
        objects.insert(pb);
        let onto: BTreeSet<usize> = src.normalizer_ids(p).into_iter().map(|f| proj[f]).collect();
        let target: BTreeSet<usize> = q.normalizer_ids(pb).into_iter().collect();
        if onto != target {
            return Err(format!("N_L(P{p}) does not map onto its image normalizer"));
        }
    }
    if &objects != q.delta() {
        return Err("quotient objects are not the images of the objects".into());
    }
    let fs = src.fusion_system().map_err(|e| format!("{e}"))?;
    let fq = q.fusion_system().map_err(|e| format!("{e}"))?;
    fusion_matches(&fq, &fs, sp)
}

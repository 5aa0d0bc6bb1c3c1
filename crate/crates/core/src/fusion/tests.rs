use super::*;
use crate::corpus::builtin;
use crate::group::DEFAULT_ORDER_BOUND;

fn group(name: &str) -> FiniteGroup {
    builtin(name).unwrap().build(DEFAULT_ORDER_BOUND).unwrap()
}

fn ambient(name: &str, p: u64) -> (FiniteGroup, Subgroup, FusionSystem) {
    let g = group(name);
    let s = g.sylow(p);
    let f = FusionSystem::from_group(&g, &s, p).unwrap();
    (g, s, f)
}

/// Finds a group isomorphism `a -> b` carrying the hom sets of `fa` onto those
/// of `fb`, by trying every assignment of generator images.
fn fusion_isomorphic(fa: &FusionSystem, fb: &FusionSystem) -> bool {
    let (a, b) = (fa.s(), fb.s());
    if a.order() != b.order() {
        return false;
    }
    let gens = a.generators();
    let target = fb.morphism_set(&(0..b.order()).collect::<Vec<_>>());
    let mut choice = alloc::vec![0usize; gens.len()];
    loop {
        if let Some(iso) = extend_to_iso(a, b, &gens, &choice) {
            if fa.morphism_set(&iso) == target {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < b.order() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_to_iso(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = alloc::vec![usize::MAX; a.order()];
    map[0] = 0;
    let mut queue = alloc::vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = a.mul(x, g);
            let img = b.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != a.order() {
        return None;
    }
    for x in 0..a.order() {
        for y in 0..a.order() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

#[test]
fn aut_f_orders_match_normalizer_quotients() {
    for name in ["S3", "A4", "S4", "A5", "SL(2,3)", "C2xS4"] {
        let g = group(name);
        for p in crate::group::prime_divisors(g.order()) {
            let s = g.sylow(p);
            let f = FusionSystem::from_group(&g, &s, p).unwrap();
            let s_elems: Vec<usize> = s.elements().collect();
            for i in 0..f.lattice().len() {
                let pg = Subgroup::from_bits_unchecked(BitSet::from_iter(g.order(), f.elems(i).iter().map(|&x| s_elems[x])));
                let expected = g.normalizer(&pg).order() / g.centralizer(&pg).order();
                assert_eq!(f.aut(i).count(), expected, "{name} p={p} P{i}");
                // F-class equals the set of G-conjugates lying in S.
                let conj: BTreeSet<Subgroup> = (0..g.order()).map(|x| g.conjugate(&pg, x)).filter(|c| c.is_subgroup_of(&s)).collect();
                assert_eq!(f.class(i).len(), conj.len(), "{name} p={p} P{i}");
            }
        }
    }
}

#[test]
fn group_systems_are_closed_and_saturated() {
    for name in ["C1", "S3", "A4", "S4", "A5", "D8", "Q8", "SL(2,3)", "C2xA5", "C2xS4"] {
        let g = group(name);
        for p in crate::corpus::corpus_primes(&g) {
            let f = FusionSystem::from_group(&g, &g.sylow(p), p).unwrap();
            assert_eq!(f.axiom_violation(), None, "{name} p={p}");
            assert!(f.is_saturated(), "{name} p={p}");
            assert!(f.is_saturated_by_axioms(), "{name} p={p}");
        }
    }
}

#[test]
fn generated_system_matches_group_system() {
    // F_{D8}(S4) is generated by Inn(D8) and one automorphism of order 3 of the normal four-group.
    let (g, s, f) = ambient("S4", 2);
    let v = (0..f.lattice().len()).find(|&i| f.order_of(i) == 4 && f.aut(i).count() == 6).unwrap();
    let order3 = f.aut(v).find(|m| {
        let (ag, auts) = f.aut_group(v);
        let i = auts.iter().position(|a| a == *m).unwrap();
        ag.element_order(i) == 3
    });
    let gen = FusionSystem::generate(f.s().clone(), 2, alloc::vec![order3.unwrap().map.clone()]).unwrap();
    let id: Vec<usize> = (0..f.s().order()).collect();
    assert_eq!(gen.morphism_set(&id), f.morphism_set(&id));
    assert!(fusion_isomorphic(&gen, &f));
    let _ = (g, s);
}

#[test]
fn non_saturated_system_is_detected() {
    // Inversion on C4 with S = C4: Aut_S(S) = 1 is not Sylow in Aut_F(S) = C2.
    let c4 = FiniteGroup::from_permutations(4, &[alloc::vec![1, 2, 3, 0]], 100).unwrap();
    let inv: Vec<u16> = (0..4).map(|x| c4.inv(x) as u16).collect();
    let f = FusionSystem::generate(c4, 2, alloc::vec![inv]).unwrap();
    assert_eq!(f.axiom_violation(), None);
    assert!(!f.is_saturated());
    assert!(!f.is_saturated_by_axioms());
    assert_eq!(f.saturation_witness(), Some(f.whole()));
    assert_eq!(f.classify().unwrap_err(), Error::NotSaturated);
}

#[test]
fn invalid_generator_maps_are_rejected() {
    let c4 = FiniteGroup::from_permutations(4, &[alloc::vec![1, 2, 3, 0]], 100).unwrap();
    assert!(FusionSystem::generate(c4.clone(), 2, alloc::vec![alloc::vec![0, 1, 1, 3]]).is_err());
    assert!(FusionSystem::generate(c4, 2, alloc::vec![alloc::vec![0, NONE, 1, NONE]]).is_err());
}

#[test]
fn a5_four_group_automizer() {
    let (_, _, f) = ambient("A5", 2);
    assert_eq!(f.aut(f.whole()).count(), 3);
    assert_eq!(f.class(1).len(), 3);
}

#[test]
fn s4_at_two() {
    let (_, _, f) = ambient("S4", 2);
    let cl = f.classify().unwrap();
    let cr = f.centric_radicals();
    assert_eq!(cr.len(), 2);
    assert!(cr.contains(&f.whole()));
    let v = cr.iter().copied().find(|&r| r != f.whole()).unwrap();
    assert_eq!(f.order_of(v), 4);
    assert_eq!(f.aut(v).count(), 6);
    assert_eq!(cl.o_p, v);
    assert_eq!(f.o_p(NormalityRule::Direct), v);
    assert_eq!(cl.center, 0);
    assert!(f.is_constrained());
    // Every subgroup is subcentric because S4 has characteristic 2.
    assert!(cl.profiles.iter().all(|p| p.subcentric));
    // centric implies quasicentric implies subcentric
    for (i, p) in cl.profiles.iter().enumerate() {
        if p.centric {
            assert!(p.quasicentric, "P{i}");
        }
        if p.quasicentric {
            assert!(p.subcentric, "P{i}");
        }
    }
    assert!(!cl.profiles[0].quasicentric);
}

#[test]
fn normality_rules_agree() {
    for name in ["S3", "A4", "S4", "A5", "D8", "Q8", "SL(2,3)", "C2xA5", "C2xS4"] {
        let g = group(name);
        for p in crate::group::prime_divisors(g.order()) {
            let f = FusionSystem::from_group(&g, &g.sylow(p), p).unwrap();
            assert_eq!(f.normal_subgroups(NormalityRule::Direct), f.normal_subgroups(NormalityRule::Criterion), "{name} p={p}");
        }
    }
}

#[test]
fn central_subgroups() {
    let (_, _, f) = ambient("C2xA5", 2);
    let z = f.center();
    assert_eq!(f.order_of(z), 2);
    assert_eq!(f.o_p(NormalityRule::Criterion), f.whole());
    let cl = f.classify().unwrap();
    assert!(cl.profiles[z].subcentric);
    assert!(cl.profiles.iter().skip(1).all(|p| p.subcentric));
    let (_, _, f) = ambient("C2xS4", 2);
    let z = f.center();
    assert_eq!(f.order_of(z), 2);
    let cl = f.classify().unwrap();
    assert!(!cl.profiles[z].quasicentric);
    assert!(cl.profiles[z].subcentric);
}

#[test]
fn quotient_by_center() {
    let (_, _, f) = ambient("C2xS4", 2);
    let z = f.center();
    let q = f.quotient_by_central(z).unwrap();
    let (_, _, f0) = ambient("S4", 2);
    assert!(fusion_isomorphic(&q.system, &f0));
    let cl = f.classify().unwrap();
    let ql = q.system.classify().unwrap();
    for i in f.lattice().overgroups_of(z) {
        assert_eq!(cl.profiles[i].subcentric, ql.profiles[q.lattice_map[i]].subcentric);
    }
    let nonc = (0..f.lattice().len()).find(|&i| !f.is_central(i)).unwrap();
    assert_eq!(f.quotient_by_central(nonc).unwrap_err(), Error::NotCentral);
}

#[test]
fn k_normalizers() {
    let (_, _, f) = ambient("S4", 2);
    let v = f.o_p(NormalityRule::Criterion);
    let n = f.normalizer_system(v);
    assert_eq!(n.t, f.whole());
    let id: Vec<usize> = (0..f.s().order()).collect();
    assert_eq!(n.morphism_set(), f.morphism_set(&id));
    let c = f.centralizer_system(v);
    assert_eq!(c.t, v);
    assert_eq!(c.system.morphism_count(), FusionSystem::inner(c.system.s().clone(), 2).unwrap().morphism_count());
    // K = Aut_F(Q) and K = 1 recover fully normalized and fully centralized.
    for q in 0..f.lattice().len() {
        let k = f.aut_f_set(q);
        assert_eq!(f.is_fully_k_normalized(q, &k), f.is_fully_normalized(q));
        let triv: BTreeSet<Vec<u16>> = [f.identity_on(q).map].into_iter().collect();
        assert_eq!(f.is_fully_k_normalized(q, &triv), f.is_fully_centralized(q));
    }
}

#[test]
fn normal_subgroup_subsystems() {
    let g = group("S4");
    let s = g.sylow(2);
    let f = FusionSystem::from_group(&g, &s, 2).unwrap();
    let a4 = g.normal_subgroups().into_iter().find(|n| n.order() == 12).unwrap();
    let e = f.normal_subgroup_system(&g, &s, &a4).unwrap();
    assert_eq!(f.order_of(e.t), 4);
    assert_eq!(f.centralizer_of_subsystem(&e).unwrap(), 0);
    assert_eq!(f.normal_subgroup_system(&g, &s, &s).unwrap_err(), Error::NotNormal);

    let g = group("C2xA5");
    let s = g.sylow(2);
    let f = FusionSystem::from_group(&g, &s, 2).unwrap();
    let a5 = g.normal_subgroups().into_iter().find(|n| n.order() == 60).unwrap();
    let e = f.normal_subgroup_system(&g, &s, &a5).unwrap();
    assert_eq!(f.centralizer_of_subsystem(&e).unwrap(), f.center());
}

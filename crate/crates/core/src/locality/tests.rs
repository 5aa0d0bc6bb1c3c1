use super::*;
use crate::corpus::builtin;
use crate::group::DEFAULT_ORDER_BOUND;

fn group(name: &str) -> FiniteGroup {
    builtin(name).unwrap().build(DEFAULT_ORDER_BOUND).unwrap()
}

fn nontrivial(l: &Lattice) -> BitSet {
    BitSet::from_iter(l.len(), 1..l.len())
}

fn char_p_type(name: &str, p: u64) -> (FiniteGroup, Subgroup, FusionSystem, Locality) {
    let g = group(name);
    let s = g.sylow(p);
    let f = FusionSystem::from_group(&g, &s, p).unwrap();
    let l = Locality::from_group(&g, &s, p, &nontrivial(f.lattice())).unwrap();
    (g, s, f, l)
}

fn find(f: &FusionSystem, order: usize, pred: impl Fn(usize) -> bool) -> usize {
    (0..f.lattice().len()).find(|&i| f.order_of(i) == order && pred(i)).unwrap()
}

#[test]
fn a5_carrier_is_a4() {
    let (g, s, _, l) = char_p_type("A5", 2);
    assert_eq!(l.size(), 12);
    let labels: BTreeSet<usize> = l.labels().iter().copied().collect();
    let n: BTreeSet<usize> = g.normalizer(&s).elements().collect();
    assert_eq!(labels, n);
    l.verify(&VerifyOptions::default()).unwrap();
}

#[test]
fn s4_locality() {
    let (_, _, f, l) = char_p_type("S4", 2);
    assert_eq!(l.size(), 24);
    l.verify(&VerifyOptions::default()).unwrap();
    let v = f.o_p(crate::fusion::NormalityRule::Criterion);
    let z = f.lattice().get(f.whole()).centralizer;
    let c4 = find(&f, 4, |i| f.s().element_order(f.elems(i)[1]) == 4 || f.s().element_order(f.elems(i)[2]) == 4);
    assert_eq!(l.normalizer_ids(v).len(), 24);
    assert_eq!(l.normalizer_ids(z).len(), 8);
    assert!(l.is_l_radical(v).unwrap());
    assert!(l.is_l_radical(f.whole()).unwrap());
    assert!(!l.is_l_radical(c4).unwrap());
    let radicals: Vec<usize> = l.objects().into_iter().filter(|&p| l.is_l_radical(p).unwrap()).collect();
    assert_eq!(radicals, f.centric_radicals());
    assert!(l.is_objective_char_p());
    assert!(l.is_linking_locality(&f));
    assert_eq!(l.normalizer_group(0).unwrap_err(), Error::NotAnObject);
}

#[test]
fn fusion_of_locality_matches_group() {
    for (name, p) in [("S4", 2), ("A5", 2), ("A4", 2), ("SL(2,3)", 2)] {
        let (_, _, f, l) = char_p_type(name, p);
        let lf = l.fusion_system().unwrap();
        let id: Vec<usize> = (0..f.s().order()).collect();
        assert_eq!(lf.morphism_set(&id), f.morphism_set(&id), "{name}");
    }
}

#[test]
fn domain_and_products() {
    let (g, _, _, l) = char_p_type("A5", 2);
    for a in 0..l.size() {
        for b in 0..l.size() {
            if let Some(c) = l.product2(a, b) {
                assert_eq!(l.label(c), g.mul(l.label(a), l.label(b)));
            }
        }
    }
    // In A4 every pair is composable since S is normal in the carrier.
    assert_eq!(l.product(&[1, 2, 3]).unwrap(), l.fold(&[1, 2, 3]).unwrap());
    let x = l.s_id(1);
    assert!(l.conjugate(x, 5).is_ok());
}

#[test]
fn transporter_categories() {
    let (_, _, f, l) = char_p_type("S4", 2);
    let t = l.transporter_category();
    t.verify(&l).unwrap();
    let v = f.o_p(crate::fusion::NormalityRule::Criterion);
    let i = t.objects.iter().position(|&o| o == v).unwrap();
    assert_eq!(t.aut_orders[i], 24);
    let (_, _, f, l) = char_p_type("A5", 2);
    let t = l.transporter_category();
    t.verify(&l).unwrap();
    let i = t.objects.iter().position(|&o| o == f.whole()).unwrap();
    assert_eq!(t.aut_orders[i], 12);
}

#[test]
fn quotient_by_four_group() {
    let (_, _, f, l) = char_p_type("S4", 2);
    let v = f.o_p(crate::fusion::NormalityRule::Criterion);
    let n = BitSet::from_iter(l.size(), f.elems(v).iter().map(|&x| l.s_id(x)));
    let q = l.quotient(&n).unwrap();
    let lb = &q.locality;
    assert_eq!(lb.size(), 6);
    assert_eq!(lb.s().order(), 2);
    // V and its subgroups project to the trivial subgroup.
    assert_eq!(lb.objects(), [0, 1]);
    lb.verify(&VerifyOptions::default()).unwrap();
    for a in 0..l.size() {
        for b in 0..l.size() {
            if let Some(c) = l.product2(a, b) {
                assert_eq!(lb.product2(q.projection[a], q.projection[b]), Some(q.projection[c]));
            }
        }
    }
    let kernel: BitSet = BitSet::from_iter(l.size(), (0..l.size()).filter(|&a| q.projection[a] == 0));
    assert_eq!(kernel, n);
}

#[test]
fn partial_normal_rejections() {
    let (_, _, f, l) = char_p_type("S4", 2);
    let z = find(&f, 2, |i| !f.lattice().is_sub(i, f.o_p(crate::fusion::NormalityRule::Criterion)));
    let n = BitSet::from_iter(l.size(), f.elems(z).iter().map(|&x| l.s_id(x)));
    assert!(matches!(l.quotient(&n), Err(Error::NotPartialNormal(_))));
}

#[test]
fn restriction() {
    let (_, _, f, l) = char_p_type("S4", 2);
    let cr: BTreeSet<usize> = f.centric_radicals().into_iter().collect();
    // Centric subgroups of D8 in S4: V, C4, the other four-group, D8.
    let centric = BitSet::from_iter(f.lattice().len(), (0..f.lattice().len()).filter(|&i| f.is_centric(i)));
    let r = l.restrict(&centric).unwrap();
    r.locality.verify(&VerifyOptions::default()).unwrap();
    assert!(cr.iter().all(|&c| centric.contains(c)));
    assert_eq!(r.locality.size(), 24);
    let not_closed = BitSet::from_iter(f.lattice().len(), [f.whole(), 1]);
    assert!(matches!(l.restrict(&not_closed), Err(Error::NotClosed(_))));
}

#[test]
fn k_normalizer_locality_of_normalizer() {
    let (_, _, f, l) = char_p_type("S4", 2);
    let z = f.lattice().get(f.whole()).centralizer;
    let k = f.aut_f_set(z);
    let n = f.normalizer_system(z);
    let gamma = BitSet::from_iter(f.lattice().len(), (0..f.lattice().len()).filter(|&i| f.lattice().is_sub(i, n.t) && i != 0));
    let sub = l.k_normalizer_locality(&f, z, &k, &gamma).unwrap();
    sub.locality.verify(&VerifyOptions::default()).unwrap();
    assert_eq!(sub.locality.size(), 8);
    for a in 0..sub.locality.size() {
        for b in 0..sub.locality.size() {
            if let Some(c) = sub.locality.product2(a, b) {
                assert_eq!(l.product2(sub.ids[a], sub.ids[b]), Some(sub.ids[c]));
            }
        }
    }
}

#[test]
fn mutation_is_caught_by_domain_rule() {
    let (_, _, _, l) = char_p_type("S4", 2);
    let mut parts = l.into_parts();
    let n = parts.inverse.len();
    let idx = 5 * n + 7;
    assert_ne!(parts.product[idx], NO);
    parts.product[idx] = NO;
    let bad = Locality::from_parts(parts);
    let err = bad.verify(&VerifyOptions::default()).unwrap_err();
    assert_eq!(err.axiom, "L2");
}

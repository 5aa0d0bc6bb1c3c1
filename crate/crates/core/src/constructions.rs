//! Localities built from a finite group `G` with Sylow subgroup `S`:
//! `L_Gamma(G)`, the object sets `Delta` and `Delta*`, and the quotient of
//! `L_{Delta*}(G)` by `Theta`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{FiniteGroup, Subgroup};
use crate::locality::{Locality, LocalityQuotient};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A group, a prime, a Sylow subgroup and its fusion system. Subgroups of `S`
/// are addressed by index in the fusion system's lattice.
#[derive(Clone, Debug)]
pub struct Setting {
    pub group: FiniteGroup,
    pub p: u64,
    pub s: Subgroup,
    pub fusion: FusionSystem,
    /// `embed[x]` is the element of `G` behind element `x` of the standalone `S`.
    pub embed: Vec<usize>,
}

/// Object sets offered for `L_Gamma(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectChoice {
    All,
    Delta,
    DeltaStar,
    Centric,
    Subcentric,
}

impl Setting {
    /// Uses the canonical Sylow p-subgroup of `group`.
    pub fn new(group: FiniteGroup, p: u64) -> Result<Self> {
        if !crate::group::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let s = group.sylow(p);
        Self::with_sylow(group, s, p)
    }

    pub fn with_sylow(group: FiniteGroup, s: Subgroup, p: u64) -> Result<Self> {
        let fusion = FusionSystem::from_group(&group, &s, p)?;
        let embed = s.elements().collect();
        Ok(Setting { group, p, s, fusion, embed })
    }

    /// The lattice subgroup `i` of `S` as a subgroup of `G`.
    pub fn in_group(&self, i: usize) -> Subgroup {
        let bits = BitSet::from_iter(self.group.order(), self.fusion.elems(i).iter().map(|&x| self.embed[x]));
        Subgroup::from_bits_unchecked(bits)
    }

    /// The lattice index of a subgroup of `G` contained in `S`.
    pub fn lattice_index(&self, h: &Subgroup) -> Option<usize> {
        let m = self.embed.len();
        if !h.is_subgroup_of(&self.s) {
            return None;
        }
        let bits = BitSet::from_iter(m, (0..m).filter(|&x| h.contains(self.embed[x])));
        self.fusion.lattice().index_of_bits(&bits)
    }

    pub fn local_normalizer(&self, i: usize) -> Subgroup {
        self.group.normalizer(&self.in_group(i))
    }

    /// `L_Gamma(G)` for a set of lattice indices `objects`.
    pub fn locality(&self, objects: &BitSet) -> Result<Locality> {
        Locality::from_group(&self.group, &self.s, self.p, objects)
    }

    /// Nontrivial subgroups of `S`.
    pub fn nontrivial(&self) -> BitSet {
        let n = self.fusion.lattice().len();
        BitSet::from_iter(n, (0..n).filter(|&i| self.fusion.order_of(i) > 1))
    }

    pub fn objects(&self, choice: ObjectChoice, sets: &DeltaSets) -> BitSet {
        let n = self.fusion.lattice().len();
        match choice {
            ObjectChoice::All => BitSet::full(n),
            ObjectChoice::Delta => sets.delta.clone(),
            ObjectChoice::DeltaStar => sets.delta_star.clone(),
            ObjectChoice::Centric => BitSet::from_iter(n, (0..n).filter(|&i| self.fusion.is_centric(i))),
            ObjectChoice::Subcentric => sets.subcentric.clone(),
        }
    }

    /// Every `N_G(P)` with `1 != P <= S` has characteristic p.
    pub fn is_characteristic_p_type(&self) -> bool {
        self.fusion.classes().iter().filter(|c| self.fusion.order_of(c[0]) > 1).all(|c| self.group.cores_of(&self.local_normalizer(c[0]), self.p).is_char_p)
    }
}

/// Every nontrivial subgroup of `S` is subcentric.
pub fn is_characteristic_p_type_fusion(f: &FusionSystem) -> Result<bool> {
    if !f.is_saturated() {
        return Err(Error::NotSaturated);
    }
    Ok(f.classes().iter().filter(|c| f.order_of(c[0]) > 1).all(|c| f.is_subcentric(c[0])))
}

/// `Delta` (`N_G(P)` of characteristic p), `Delta*` (`N_G(P)` almost of
/// characteristic p) and the subcentric and quasicentric subgroups of
/// `F_S(G)`, as sets of lattice indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSets {
    pub delta: BitSet,
    pub delta_star: BitSet,
    pub subcentric: BitSet,
    pub quasicentric: BitSet,
}

impl DeltaSets {
    pub fn new(setting: &Setting) -> Self {
        let f = &setting.fusion;
        let n = f.lattice().len();
        let mut sets = DeltaSets { delta: BitSet::new(n), delta_star: BitSet::new(n), subcentric: BitSet::new(n), quasicentric: BitSet::new(n) };
        for i in 0..n {
            let c = setting.group.cores_of(&setting.local_normalizer(i), setting.p);
            if c.is_char_p {
                sets.delta.insert(i);
            }
            if c.is_almost_char_p {
                sets.delta_star.insert(i);
            }
        }
        for class in f.classes() {
            let (sub, quasi) = (f.is_subcentric(class[0]), f.is_quasicentric(class[0]));
            for q in class {
                if sub {
                    sets.subcentric.insert(q);
                }
                if quasi {
                    sets.quasicentric.insert(q);
                }
            }
        }
        sets
    }

    /// `F^s \ Delta*`.
    pub fn gap(&self) -> BitSet {
        let mut g = self.subcentric.clone();
        g.difference_with(&self.delta_star);
        g
    }

    /// Checks `Delta <= Delta* <= F^s`, `F^q <= Delta*`, and that `Delta` and
    /// `Delta*` are unions of conjugacy classes closed under overgroups.
    /// Returns the first failure, smallest subgroup first.
    pub fn invariant_violation(&self, f: &FusionSystem) -> Option<String> {
        let lat = f.lattice();
        for i in 0..lat.len() {
            if self.delta.contains(i) && !self.delta_star.contains(i) {
                return Some(format!("P{i} in Delta but not in Delta*"));
            }
            if self.delta_star.contains(i) && !self.subcentric.contains(i) {
                return Some(format!("P{i} in Delta* but not subcentric"));
            }
            if self.quasicentric.contains(i) && !self.delta_star.contains(i) {
                return Some(format!("P{i} quasicentric but not in Delta*"));
            }
            for (name, set) in [("Delta", &self.delta), ("Delta*", &self.delta_star)] {
                if !set.contains(i) {
                    continue;
                }
                if let Some(q) = f.class(i).into_iter().find(|&q| !set.contains(q)) {
                    return Some(format!("{name} contains P{i} but not its conjugate P{q}"));
                }
                if let Some(q) = lat.overgroups_of(i).into_iter().find(|&q| !set.contains(q)) {
                    return Some(format!("{name} contains P{i} but not its overgroup P{q}"));
                }
            }
        }
        None
    }
}

/// `L_{Delta*}(G)`, `Theta` as a set of carrier ids, the per-object kernels
/// `Theta(P) = O_p'(N_G(P))` and the quotient `L_{Delta*}(G)/Theta`.
#[derive(Clone, Debug)]
pub struct ThetaData {
    pub source: Locality,
    pub theta: BitSet,
    /// `(P, Theta(P))` for each object `P`, with `Theta(P)` in carrier ids.
    pub kernels: Vec<(usize, BitSet)>,
    pub quotient: LocalityQuotient,
}

/// Carrier id of each element of `G`, or `None` outside the carrier.
pub fn carrier_index(l: &Locality, group_order: usize) -> Vec<Option<usize>> {
    let mut id = alloc::vec![None; group_order];
    for (f, &g) in l.labels().iter().enumerate() {
        id[g] = Some(f);
    }
    id
}

pub fn theta_quotient(setting: &Setting, sets: &DeltaSets) -> Result<ThetaData> {
    let source = setting.locality(&sets.delta_star)?;
    let id = carrier_index(&source, setting.group.order());
    let mut theta = BitSet::new(source.size());
    let mut kernels = Vec::new();
    for p in sets.delta_star.iter() {
        let n = setting.local_normalizer(p);
        let op = setting.group.cores_of(&n, setting.p).o_p_prime;
        let ids = op
            .elements()
            .map(|g| id[g].ok_or_else(|| Error::Inconsistent(format!("element {g} of Theta(P{p}) is outside the carrier"))))
            .collect::<Result<Vec<usize>>>()?;
        let k = BitSet::from_iter(source.size(), ids);
        theta.union_with(&k);
        kernels.push((p, k));
    }
    let quotient = source.quotient(&theta)?;
    Ok(ThetaData { source, theta, kernels, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::group::DEFAULT_ORDER_BOUND;

    fn setting(name: &str, p: u64) -> Setting {
        let g = builtin(name).unwrap().build(DEFAULT_ORDER_BOUND).unwrap();
        Setting::new(g, p).unwrap()
    }

    fn central_of_order(s: &Setting, k: usize) -> usize {
        let f = &s.fusion;
        let z = s.group.center();
        (0..f.lattice().len()).find(|&i| f.order_of(i) == k && s.in_group(i).is_subgroup_of(&z)).unwrap()
    }

    #[test]
    fn s4_is_of_characteristic_2_type() {
        let s = setting("S4", 2);
        assert!(s.is_characteristic_p_type());
        assert_eq!(is_characteristic_p_type_fusion(&s.fusion), Ok(true));
        let sets = DeltaSets::new(&s);
        // S4 itself has characteristic 2, so the trivial subgroup is in Delta as well.
        assert_eq!(sets.delta.count(), 10);
        assert_eq!(sets.delta, sets.delta_star);
        assert_eq!(sets.invariant_violation(&s.fusion), None);
    }

    #[test]
    fn c2_a5_central_involution_is_subcentric_but_not_in_delta_star() {
        let s = setting("C2xA5", 2);
        let sets = DeltaSets::new(&s);
        let z = central_of_order(&s, 2);
        assert!(!sets.delta_star.contains(z));
        assert!(sets.subcentric.contains(z));
        assert!(sets.gap().contains(z));
        assert!(!s.is_characteristic_p_type());
        assert_eq!(is_characteristic_p_type_fusion(&s.fusion), Ok(true));
        assert_eq!(sets.invariant_violation(&s.fusion), None);
    }

    #[test]
    fn c2_s4_central_involution_is_in_delta_but_not_quasicentric() {
        let s = setting("C2xS4", 2);
        let sets = DeltaSets::new(&s);
        let z = central_of_order(&s, 2);
        assert!(sets.delta.contains(z));
        assert!(!sets.quasicentric.contains(z));
        assert_eq!(sets.invariant_violation(&s.fusion), None);
    }

    #[test]
    fn p_groups_are_of_characteristic_p_type() {
        for (name, p) in [("D8", 2), ("Q8", 2), ("C1", 2)] {
            let s = setting(name, p);
            assert!(s.is_characteristic_p_type(), "{name}");
            assert_eq!(is_characteristic_p_type_fusion(&s.fusion), Ok(true));
        }
    }

    #[test]
    fn example_carriers() {
        let a5 = setting("A5", 2);
        let l = a5.locality(&a5.nontrivial()).unwrap();
        assert_eq!(l.size(), 12);
        let s4 = setting("S4", 2);
        assert_eq!(s4.locality(&s4.nontrivial()).unwrap().size(), 24);
    }

    #[test]
    fn locality_rejects_unclosed_objects() {
        let s = setting("S4", 2);
        let mut objects = BitSet::new(s.fusion.lattice().len());
        objects.insert(s.fusion.whole());
        objects.insert(0);
        assert!(matches!(s.locality(&objects), Err(Error::NotClosed(_))));
    }

    #[test]
    fn theta_for_s4_at_2_is_trivial() {
        let s = setting("S4", 2);
        let t = theta_quotient(&s, &DeltaSets::new(&s)).unwrap();
        assert_eq!(t.theta.count(), 1);
        assert_eq!(t.quotient.locality.size(), t.source.size());
    }

    #[test]
    fn theta_for_s3_at_2_is_c3() {
        let s = setting("S3", 2);
        let sets = DeltaSets::new(&s);
        assert_eq!(sets.delta_star.count(), 2);
        let t = theta_quotient(&s, &sets).unwrap();
        assert_eq!(t.source.size(), 6);
        assert_eq!(t.theta.count(), 3);
        assert_eq!(t.quotient.locality.size(), 2);
    }

    #[test]
    fn theta_quotients_are_linking_localities() {
        for (name, p, theta) in [("S4", 3, 4), ("A4", 3, 4), ("SL(2,3)", 3, 8), ("A5", 2, 1), ("C2xA5", 5, 2)] {
            let s = setting(name, p);
            let t = theta_quotient(&s, &DeltaSets::new(&s)).unwrap();
            assert_eq!(t.theta.count(), theta, "{name}@{p}");
            let q = &t.quotient.locality;
            assert!(q.verify(&Default::default()).is_ok(), "{name}@{p}");
            let f = q.fusion_system().unwrap();
            assert!(q.is_linking_locality(&f), "{name}@{p}");
            assert_eq!(f.morphism_count(), s.fusion.morphism_count(), "{name}@{p}");
        }
    }
}

use super::{is_power_of, FiniteGroup, Subgroup};
use crate::bitset::BitSet;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct SubgroupInfo {
    pub sub: Subgroup,
    pub elems: Vec<usize>,
    pub gens: Vec<usize>,
    pub normalizer: usize,
    pub centralizer: usize,
    /// Maximal proper subgroups.
    pub maximal: Vec<usize>,
}

impl SubgroupInfo {
    pub fn order(&self) -> usize {
        self.elems.len()
    }
}

/// Every subgroup of a (small) group, indexed by increasing order and then
/// canonical order. Index 0 is the trivial subgroup and the last index is the
/// whole group.
#[derive(Clone, Debug)]
pub struct Lattice {
    infos: Vec<SubgroupInfo>,
    index: BTreeMap<BitSet, usize>,
}

impl Lattice {
    pub fn new(g: &FiniteGroup) -> Lattice {
        let n = g.order();
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut stack = alloc::vec![g.trivial_subgroup()];
        found.insert(g.trivial_subgroup());
        while let Some(h) = stack.pop() {
            let mut covered = h.bits().clone();
            for x in 0..n {
                if covered.contains(x) {
                    continue;
                }
                for y in h.elements() {
                    covered.insert(g.mul(y, x));
                }
                let k = g.extend(&h, x);
                if found.insert(k.clone()) {
                    stack.push(k);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        let index: BTreeMap<BitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.bits().clone(), i)).collect();
        let p_group = prime_power_base(n);
        let mut infos: Vec<SubgroupInfo> = subs
            .iter()
            .map(|s| SubgroupInfo {
                sub: s.clone(),
                elems: s.elements().collect(),
                gens: g.generators_of(s),
                normalizer: index[g.normalizer(s).bits()],
                centralizer: index[g.centralizer(s).bits()],
                maximal: Vec::new(),
            })
            .collect();
        for i in 0..subs.len() {
            let oi = subs[i].order();
            let below: Vec<usize> = (0..i).filter(|&j| subs[j].order() < oi && subs[j].is_subgroup_of(&subs[i])).collect();
            infos[i].maximal = match p_group {
                Some(p) => below.into_iter().filter(|&j| subs[j].order() * p == oi).collect(),
                None => below.iter().copied().filter(|&j| !below.iter().any(|&k| k != j && subs[j].is_subgroup_of(&subs[k]))).collect(),
            };
        }
        Lattice { infos, index }
    }

    pub fn len(&self) -> usize {
        self.infos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.infos.is_empty()
    }

    pub fn get(&self, i: usize) -> &SubgroupInfo {
        &self.infos[i]
    }

    pub fn sub(&self, i: usize) -> &Subgroup {
        &self.infos[i].sub
    }

    pub fn order(&self, i: usize) -> usize {
        self.infos[i].elems.len()
    }

    pub fn whole(&self) -> usize {
        self.infos.len() - 1
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.bits()).copied()
    }

    pub fn index_of_bits(&self, s: &BitSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn is_sub(&self, i: usize, j: usize) -> bool {
        self.infos[i].sub.is_subgroup_of(&self.infos[j].sub)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[self.infos[i].sub.intersection(&self.infos[j].sub).bits()]
    }

    pub fn join(&self, g: &FiniteGroup, i: usize, j: usize) -> usize {
        if self.is_sub(i, j) {
            return j;
        }
        if self.is_sub(j, i) {
            return i;
        }
        let mut gens = self.infos[i].gens.clone();
        gens.extend(&self.infos[j].gens);
        self.index[g.closure(gens).bits()]
    }

    pub fn conjugate(&self, g: &FiniteGroup, i: usize, x: usize) -> usize {
        self.index[g.conjugate(&self.infos[i].sub, x).bits()]
    }

    /// Indices of all subgroups of subgroup `i`, including `i`.
    pub fn subgroups_of(&self, i: usize) -> Vec<usize> {
        (0..=i).filter(|&j| self.is_sub(j, i)).collect()
    }

    /// Indices of all subgroups containing subgroup `i`, including `i`.
    pub fn overgroups_of(&self, i: usize) -> Vec<usize> {
        (i..self.len()).filter(|&j| self.is_sub(i, j)).collect()
    }
}

fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    is_power_of(n, p as u64).then_some(p)
}

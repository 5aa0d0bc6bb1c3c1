use super::FusionSystem;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// How normal subgroups of a fusion system are recognized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalityRule {
    /// Every morphism extends to one on `PQ` that leaves `Q` invariant.
    Direct,
    /// Strongly closed and contained in every centric radical subgroup.
    /// Only valid for saturated systems.
    Criterion,
}

/// Per-subgroup predicates of a saturated fusion system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub class_id: usize,
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub fully_automized: bool,
    pub receptive: bool,
    pub centric: bool,
    pub radical: bool,
    pub quasicentric: bool,
    pub subcentric: bool,
    pub normal: bool,
    pub central: bool,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub profiles: Vec<Profile>,
    /// F-conjugacy classes, each sorted, listed by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub o_p: usize,
    pub center: usize,
}

impl FusionSystem {
    /// `C_S(Q') <= Q'` for every F-conjugate `Q'`.
    pub fn is_centric(&self, p: usize) -> bool {
        self.class(p).into_iter().all(|q| self.lattice.is_sub(self.lattice.get(q).centralizer, q))
    }

    /// `O_p(Aut_F(P)) = Inn(P)`.
    pub fn is_radical(&self, p: usize) -> bool {
        let (g, auts) = self.aut_group(p);
        let op: BTreeSet<Vec<u16>> = g.o_p(self.p).elements().map(|i| auts[i].map.clone()).collect();
        op == self.inn(p)
    }

    pub fn centric_radicals(&self) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&p| self.is_centric(p) && self.is_radical(p)).collect()
    }

    /// No morphism moves a subgroup of `Q` outside `Q`.
    pub fn is_strongly_closed(&self, q: usize) -> bool {
        self.lattice.subgroups_of(q).into_iter().all(|p| self.homs[p].iter().all(|m| self.lattice.is_sub(m.image, q)))
    }

    pub fn is_normal_direct(&self, q: usize) -> bool {
        if self.lattice.get(q).normalizer != self.whole() {
            return false;
        }
        (0..self.lattice.len()).all(|p| {
            let pq = self.lattice.join(&self.s, p, q);
            self.homs[p].iter().all(|phi| self.extension(phi, pq).any(|ext| self.image_of(ext, q) == q))
        })
    }

    pub fn is_normal_by_criterion(&self, q: usize, centric_radicals: &[usize]) -> bool {
        centric_radicals.iter().all(|&r| self.lattice.is_sub(q, r)) && self.is_strongly_closed(q)
    }

    /// The criterion for saturated systems, the direct definition otherwise.
    pub fn default_rule(&self) -> NormalityRule {
        if self.is_saturated() {
            NormalityRule::Criterion
        } else {
            NormalityRule::Direct
        }
    }

    pub fn normal_subgroups(&self, rule: NormalityRule) -> Vec<usize> {
        let candidates = (0..self.lattice.len()).filter(|&q| self.lattice.get(q).normalizer == self.whole());
        match rule {
            NormalityRule::Direct => candidates.filter(|&q| self.is_normal_direct(q)).collect(),
            NormalityRule::Criterion => {
                let cr = self.centric_radicals();
                candidates.filter(|&q| self.is_normal_by_criterion(q, &cr)).collect()
            }
        }
    }

    fn join_all(&self, subs: &[usize]) -> usize {
        subs.iter().fold(0, |acc, &q| self.lattice.join(&self.s, acc, q))
    }

    /// `O_p(F)`: the product of all normal subgroups.
    pub fn o_p(&self, rule: NormalityRule) -> usize {
        self.join_all(&self.normal_subgroups(rule))
    }

    /// `Q <= Z(S)` and every morphism extends to `PQ` fixing `Q` pointwise.
    pub fn is_central(&self, q: usize) -> bool {
        if self.lattice.get(q).centralizer != self.whole() {
            return false;
        }
        let qe = self.elems(q);
        (0..self.lattice.len()).all(|p| {
            let pq = self.lattice.join(&self.s, p, q);
            self.homs[p].iter().all(|phi| self.extension(phi, pq).any(|ext| ext.fixes_pointwise(qe)))
        })
    }

    pub fn central_subgroups(&self) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&q| self.is_central(q)).collect()
    }

    /// `Z(F)`: the product of all central subgroups.
    pub fn center(&self) -> usize {
        self.join_all(&self.central_subgroups())
    }

    /// Saturated with `C_S(O_p(F)) <= O_p(F)`.
    pub fn is_constrained(&self) -> bool {
        if !self.is_saturated() {
            return false;
        }
        let o = self.o_p(NormalityRule::Criterion);
        self.lattice.is_sub(self.lattice.get(o).centralizer, o)
    }

    /// `C_F(Q') = F_{C_S(Q')}(C_S(Q'))` for every fully centralized conjugate `Q'`.
    pub fn is_quasicentric(&self, p: usize) -> bool {
        self.class(p).into_iter().filter(|&q| self.is_fully_centralized(q)).all(|q| self.centralizer_system_is_inner(q))
    }

    fn centralizer_system_is_inner(&self, q: usize) -> bool {
        let c = self.centralizer_system(q);
        let inner = FusionSystem::inner(c.system.s().clone(), self.p).expect("p-group");
        inner.morphism_set(&c.embed) == c.morphism_set()
    }

    /// `O_p(N_F(Q))` as a parent lattice index.
    pub fn o_p_of_normalizer(&self, q: usize) -> usize {
        let n = self.normalizer_system(q);
        let o = n.system.o_p(n.system.default_rule());
        n.to_parent(self, o)
    }

    /// `O_p(N_F(Q'))` is centric for every fully normalized conjugate `Q'`.
    pub fn is_subcentric(&self, p: usize) -> bool {
        self.class(p).into_iter().filter(|&q| self.is_fully_normalized(q)).all(|q| self.is_centric(self.o_p_of_normalizer(q)))
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut done = BitSet::new(self.lattice.len());
        let mut out = Vec::new();
        for p in 0..self.lattice.len() {
            if !done.contains(p) {
                let c = self.class(p);
                for &q in &c {
                    done.insert(q);
                }
                out.push(c);
            }
        }
        out
    }

    /// Full per-subgroup classification. Requires saturation.
    pub fn classify(&self) -> Result<Classification> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let classes = self.classes();
        let normal: BTreeSet<usize> = self.normal_subgroups(NormalityRule::Criterion).into_iter().collect();
        let central: BTreeSet<usize> = self.central_subgroups().into_iter().collect();
        let mut profiles: Vec<Option<Profile>> = alloc::vec![None; self.lattice.len()];
        for (id, class) in classes.iter().enumerate() {
            let rep = class[0];
            let centric = self.is_centric(rep);
            let radical = self.is_radical(rep);
            let quasicentric = self.is_quasicentric(rep);
            let subcentric = self.is_subcentric(rep);
            for &q in class {
                profiles[q] = Some(Profile {
                    class_id: id,
                    fully_normalized: self.is_fully_normalized(q),
                    fully_centralized: self.is_fully_centralized(q),
                    fully_automized: self.is_fully_automized(q),
                    receptive: self.is_receptive(q),
                    centric,
                    radical,
                    quasicentric,
                    subcentric,
                    normal: normal.contains(&q),
                    central: central.contains(&q),
                });
            }
        }
        let o_p = self.join_all(&normal.iter().copied().collect::<Vec<_>>());
        let center = self.join_all(&central.iter().copied().collect::<Vec<_>>());
        Ok(Classification { profiles: profiles.into_iter().map(|p| p.expect("every subgroup is in a class")).collect(), classes, o_p, center })
    }
}

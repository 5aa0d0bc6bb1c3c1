use super::{FiniteGroup, Subgroup};

/// `O_p(H)`, `O_p'(H)` and the characteristic-p predicates of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cores {
    pub o_p: Subgroup,
    pub o_p_prime: Subgroup,
    pub is_char_p: bool,
    pub is_almost_char_p: bool,
}

impl FiniteGroup {
    /// Largest normal p-subgroup: the intersection of all Sylow p-subgroups.
    pub fn o_p(&self, p: u64) -> Subgroup {
        let s = self.sylow(p);
        let mut core = s.clone();
        for g in 0..self.order() {
            if core.is_trivial() {
                break;
            }
            core = core.intersection(&self.conjugate(&s, g));
        }
        core
    }

    /// Largest normal p'-subgroup: the product of all normal closures that are p'-groups.
    pub fn o_p_prime(&self, p: u64) -> Subgroup {
        let mut theta = self.trivial_subgroup();
        for cls in self.conjugacy_classes() {
            let x = cls[0];
            if theta.contains(x) || (self.element_order(x) as u64).is_multiple_of(p) {
                continue;
            }
            let ncl = self.normal_closure([x]);
            if !(ncl.order() as u64).is_multiple_of(p) {
                theta = self.join(&theta, &ncl);
            }
        }
        theta
    }

    pub fn is_char_p(&self, p: u64) -> bool {
        let o = self.o_p(p);
        self.centralizer(&o).is_subgroup_of(&o)
    }

    pub fn cores(&self, p: u64) -> Cores {
        let o_p = self.o_p(p);
        let o_p_prime = self.o_p_prime(p);
        let is_char_p = self.centralizer(&o_p).is_subgroup_of(&o_p);
        let is_almost_char_p = is_char_p || self.quotient(&o_p_prime).map(|q| q.group.is_char_p(p)).expect("O_p' is normal");
        Cores { o_p, o_p_prime, is_char_p, is_almost_char_p }
    }

    /// Cores of a subgroup `h`, reported in this group's coordinates.
    pub fn cores_of(&self, h: &Subgroup, p: u64) -> Cores {
        let (hg, embed) = self.subgroup_group(h);
        let c = hg.cores(p);
        let lift = |s: &Subgroup| Subgroup(crate::bitset::BitSet::from_iter(self.order(), s.elements().map(|x| embed[x])));
        Cores { o_p: lift(&c.o_p), o_p_prime: lift(&c.o_p_prime), is_char_p: c.is_char_p, is_almost_char_p: c.is_almost_char_p }
    }
}

use super::{FusionSystem, Morphism, NONE};
use crate::bitset::BitSet;
use crate::group::p_part;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

impl FusionSystem {
    /// `Aut_S(P)` is a Sylow p-subgroup of `Aut_F(P)`.
    pub fn is_fully_automized(&self, p: usize) -> bool {
        let autf = self.aut(p).count();
        self.aut_s(p).len() == p_part(autf, self.p)
    }

    /// `N_phi = { g in N_S(Q) : phi^-1 c_g phi in Aut_S(P) }` for an isomorphism
    /// `phi: Q -> P`, as a lattice index.
    pub fn n_phi(&self, phi: &Morphism, aut_s_p: &BTreeSet<Vec<u16>>) -> usize {
        let q = phi.source;
        let n = self.s.order();
        let inv = self.inverse(phi);
        let pelems = self.elems(phi.image);
        let members = self.elems(self.lattice.get(q).normalizer).iter().copied().filter(|&g| {
            let mut m = alloc::vec![NONE; n];
            for &y in pelems {
                let x = inv.apply(y);
                m[y] = phi.map[self.s.conj(x, g)];
            }
            aut_s_p.contains(&m)
        });
        let bits = BitSet::from_iter(n, members);
        self.lattice.index_of_bits(&bits).expect("N_phi is a subgroup")
    }

    /// Every isomorphism onto `p` from an F-conjugate extends to its `N_phi`.
    pub fn is_receptive(&self, p: usize) -> bool {
        let aut_s_p = self.aut_s(p);
        self.class(p).into_iter().all(|q| {
            self.isos(q, p).all(|phi| {
                let d = self.n_phi(phi, &aut_s_p);
                self.extension(phi, d).next().is_some()
            })
        })
    }

    /// Saturation via the class-wise criterion: each F-class has a member that
    /// is fully automized and receptive. Returns the first class (by its
    /// smallest member) lacking such a member.
    pub fn saturation_witness(&self) -> Option<usize> {
        let mut done = BitSet::new(self.lattice.len());
        for p in 0..self.lattice.len() {
            if done.contains(p) {
                continue;
            }
            let class = self.class(p);
            for &q in &class {
                done.insert(q);
            }
            if !class.iter().any(|&q| self.is_fully_automized(q) && self.is_receptive(q)) {
                return Some(p);
            }
        }
        None
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_witness().is_none()
    }

    /// Saturation via the Sylow and extension axioms: every fully normalized
    /// subgroup is fully centralized and fully automized, and every fully
    /// centralized subgroup is receptive.
    pub fn is_saturated_by_axioms(&self) -> bool {
        (0..self.lattice.len()).all(|p| {
            (!self.is_fully_normalized(p) || (self.is_fully_centralized(p) && self.is_fully_automized(p)))
                && (!self.is_fully_centralized(p) || self.is_receptive(p))
        })
    }
}

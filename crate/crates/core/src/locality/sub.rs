use super::{Locality, LocalityParts, NO};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, NONE};
use crate::group::Lattice;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

/// A locality carved out of a larger one. `ids[i]` is the parent id of element
/// `i`; `s_embed[x]` is the parent `S`-element of `x`. The inclusion is a
/// homomorphism of partial groups by construction.
#[derive(Clone, Debug)]
pub struct SubLocality {
    pub locality: Locality,
    pub ids: Vec<usize>,
    pub s_embed: Vec<usize>,
}

impl Locality {
    /// The sublocality on `carrier` (parent ids containing 0) over the subgroup
    /// `t` of `S`, with objects `objects` (parent lattice indices below `t`).
    /// Conjugation maps are cut down to `t` and a pair keeps its product when
    /// the cut-down `S_(f,g)` is an object.
    fn sublocality(&self, carrier: Vec<usize>, t: usize, objects: &BitSet) -> Result<SubLocality> {
        let (tg, embed) = self.s.subgroup_group(self.lattice.sub(t));
        let tlat = Lattice::new(&tg);
        let m = tg.order();
        let mut pos = alloc::vec![NONE; self.s.order()];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i as u16;
        }
        let mut delta = BitSet::new(tlat.len());
        for p in objects.iter() {
            if !self.lattice.is_sub(p, t) {
                return Err(Error::ObjectSetMismatch(format!("object P{p} is not below the new S")));
            }
            let bits = BitSet::from_iter(m, self.lattice.get(p).elems.iter().map(|&x| pos[x] as usize));
            delta.insert(tlat.index_of_bits(&bits).expect("subgroup of T"));
        }
        let size = carrier.len();
        let mut id_of = alloc::vec![NO; self.size];
        for (i, &f) in carrier.iter().enumerate() {
            id_of[f] = i as u32;
        }
        if id_of[0] != 0 {
            return Err(Error::Inconsistent("identity must come first".into()));
        }
        let mut conj = Vec::with_capacity(size * m);
        for &f in &carrier {
            let c = self.conj_map(f);
            conj.extend(embed.iter().map(|&x| if c[x] == NONE { NONE } else { pos[c[x] as usize] }));
        }
        let inverse = carrier
            .iter()
            .map(|&f| match id_of[self.inv(f)] {
                NO => Err(Error::NotClosed(format!("inverse of {f} leaves the carrier"))),
                i => Ok(i),
            })
            .collect::<Result<Vec<u32>>>()?;
        let s_ids = embed
            .iter()
            .map(|&x| match id_of[self.s_id(x)] {
                NO => Err(Error::NotClosed(format!("S-element {x} missing from the carrier"))),
                i => Ok(i),
            })
            .collect::<Result<Vec<u32>>>()?;
        let labels = carrier.iter().map(|&f| self.labels[f]).collect();
        let mut sub = Locality::from_parts(LocalityParts { p: self.p, s: tg, inverse, s_ids, delta, conj, product: Vec::new(), labels });
        let mut product = alloc::vec![NO; size * size];
        for (i, &f) in carrier.iter().enumerate() {
            for (j, &g) in carrier.iter().enumerate() {
                if !sub.in_domain(&[i, j]) {
                    continue;
                }
                let h = self.product2(f, g).ok_or_else(|| Error::Inconsistent(format!("product ({f}, {g}) undefined in the parent")))?;
                if id_of[h] == NO {
                    return Err(Error::NotClosed(format!("product ({f}, {g}) leaves the carrier")));
                }
                product[i * size + j] = id_of[h];
            }
        }
        sub.product = product;
        Ok(SubLocality { locality: sub, ids: carrier, s_embed: embed })
    }

    /// `L|_Delta = { f : S_f in Delta }` for a subset `Delta` of the objects that
    /// is closed under `L`-conjugation and overgroups.
    pub fn restrict(&self, objects: &BitSet) -> Result<SubLocality> {
        if !objects.is_subset(&self.delta) {
            return Err(Error::ObjectSetMismatch("new objects are not objects of L".into()));
        }
        for p in objects.iter() {
            if let Some(q) = self.lattice.overgroups_of(p).into_iter().find(|&q| !objects.contains(q)) {
                return Err(Error::NotClosed(format!("overgroup P{q} of P{p} missing")));
            }
            for f in 0..self.size {
                if let Some(q) = self.conjugate_subgroup(p, f) {
                    if !objects.contains(q) {
                        return Err(Error::NotClosed(format!("conjugate P{q} of P{p} missing")));
                    }
                }
            }
        }
        let carrier: Vec<usize> = (0..self.size).filter(|&f| self.lattice.index_of_bits(&self.s_f(f)).is_some_and(|i| objects.contains(i))).collect();
        self.sublocality(carrier, self.lattice.whole(), objects)
    }

    /// `N_L^K(Q)`-locality: elements `f` of `N_L(Q)` with `c_f|Q in K` and
    /// `S_f cap N_S^K(Q) in Gamma`. `f` must be the fusion system of this
    /// locality; `gamma` holds lattice indices below `N_S^K(Q)` with `PQ` an
    /// object for each `P` in `gamma`.
    pub fn k_normalizer_locality(&self, f: &FusionSystem, q: usize, k: &BTreeSet<Vec<u16>>, gamma: &BitSet) -> Result<SubLocality> {
        if !f.is_fully_k_normalized(q, k) {
            return Err(Error::NotFullyKNormalized);
        }
        let t = f.k_normalizer_subgroup(q, k);
        for p in gamma.iter() {
            if !self.lattice.is_sub(p, t) {
                return Err(Error::ObjectSetMismatch(format!("P{p} is not below N_S^K(Q)")));
            }
            let pq = self.lattice.join(&self.s, p, q);
            if !self.delta.contains(pq) {
                return Err(Error::ObjectSetMismatch(format!("P{p}Q is not an object")));
            }
        }
        let tset = self.lattice.sub(t).bits().clone();
        let qelems = &self.lattice.get(q).elems;
        let carrier: Vec<usize> = self
            .normalizer_ids(q)
            .into_iter()
            .filter(|&g| {
                let c = self.conj_map(g);
                let mut on_q = alloc::vec![NONE; self.s.order()];
                for &x in qelems {
                    on_q[x] = c[x];
                }
                let sft = self.s_f(g).intersection(&tset);
                k.contains(&on_q) && self.lattice.index_of_bits(&sft).is_some_and(|i| gamma.contains(i))
            })
            .collect();
        self.sublocality(carrier, t, gamma)
    }
}

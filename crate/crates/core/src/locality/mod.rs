//! Localities: finite partial groups `L` with a Sylow subgroup `S` and an object
//! set `Delta` of subgroups of `S`.
//!
//! Elements are carrier ids `0..size()` with `0` the identity. Each `f` stores
//! its conjugation map `c_f` on `S_f = { s in S : s^f in S }`. The domain is
//! intensional: a word `w` lies in `D` exactly when `S_w` is an object, where
//! `S_w` is the set of `s` that can be conjugated successively by the letters
//! of `w` while staying in `S`. Binary products are tabulated for pairs in `D`;
//! longer products are left folds.

mod quotient;
mod sub;
mod transporter;
mod verify;

pub use quotient::LocalityQuotient;
pub use sub::SubLocality;
pub use transporter::{TMorphism, TransporterCategory};
pub use verify::{VerifyOptions, Violation};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, NONE};
use crate::group::{FiniteGroup, Lattice, Subgroup};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

/// Missing product marker.
pub const NO: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Locality {
    p: u64,
    size: usize,
    inverse: Vec<u32>,
    s: FiniteGroup,
    lattice: Lattice,
    s_ids: Vec<u32>,
    s_of_id: Vec<u16>,
    delta: BitSet,
    conj: Vec<u16>,
    product: Vec<u32>,
    labels: Vec<usize>,
}

/// A subgroup-like subset of a locality that forms a group, such as `N_L(P)`
/// for an object `P`, with `ids[i]` the carrier id of group element `i`.
#[derive(Clone, Debug)]
pub struct LocalGroup {
    pub group: FiniteGroup,
    pub ids: Vec<usize>,
}

/// Raw tables of a locality, for assembling one from outside this module.
#[derive(Clone, Debug)]
pub struct LocalityParts {
    pub p: u64,
    pub s: FiniteGroup,
    pub inverse: Vec<u32>,
    pub s_ids: Vec<u32>,
    /// Objects as lattice indices of `s`.
    pub delta: BitSet,
    /// `size * |S|` conjugation maps with [`NONE`] outside `S_f`.
    pub conj: Vec<u16>,
    /// `size * size` products with [`NO`] outside the domain.
    pub product: Vec<u32>,
    pub labels: Vec<usize>,
}

impl Locality {
    pub fn from_parts(parts: LocalityParts) -> Self {
        let LocalityParts { p, s, inverse, s_ids, delta, conj, product, labels } = parts;
        let size = inverse.len();
        let lattice = Lattice::new(&s);
        let mut s_of_id = alloc::vec![NONE; size];
        for (x, &id) in s_ids.iter().enumerate() {
            s_of_id[id as usize] = x as u16;
        }
        Locality { p, size, inverse, s, lattice, s_ids, s_of_id, delta, conj, product, labels }
    }

    pub fn into_parts(self) -> LocalityParts {
        LocalityParts {
            p: self.p,
            s: self.s,
            inverse: self.inverse,
            s_ids: self.s_ids,
            delta: self.delta,
            conj: self.conj,
            product: self.product,
            labels: self.labels,
        }
    }

    /// `L_Delta(G) = { g : S cap S^g in Delta }` with the products of `G`.
    /// `delta` is a set of lattice indices of `S` (numbered as in
    /// [`FusionSystem::from_group`]) closed under `G`-conjugation and overgroups.
    pub fn from_group(g: &FiniteGroup, s: &Subgroup, p: u64, delta: &BitSet) -> Result<Self> {
        if !g.is_sylow(s, p) || !g.is_p_subgroup(s, p) {
            return Err(Error::NotSylow { p });
        }
        let (sg, embed) = g.subgroup_group(s);
        let lattice = Lattice::new(&sg);
        let m = sg.order();
        let mut pos = alloc::vec![NONE; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i as u16;
        }
        if !delta.contains(lattice.whole()) {
            return Err(Error::NotClosed("S is not an object".into()));
        }
        for pi in delta.iter() {
            for &q in &lattice.overgroups_of(pi) {
                if !delta.contains(q) {
                    return Err(Error::NotClosed(format!("overgroup P{q} of object P{pi} missing")));
                }
            }
            for x in 0..g.order() {
                let img: Vec<u16> = lattice.get(pi).elems.iter().map(|&y| pos[g.conj(embed[y], x)]).collect();
                if img.contains(&NONE) {
                    continue;
                }
                let q = lattice.index_of_bits(&BitSet::from_iter(m, img.iter().map(|&y| y as usize))).expect("conjugate subgroup");
                if !delta.contains(q) {
                    return Err(Error::NotClosed(format!("conjugate P{q} of object P{pi} missing")));
                }
            }
        }
        let mut carrier = Vec::new();
        let mut conj = Vec::new();
        for x in 0..g.order() {
            let cx: Vec<u16> = embed.iter().map(|&e| pos[g.conj(e, x)]).collect();
            let sx = BitSet::from_iter(m, (0..m).filter(|&i| cx[i] != NONE));
            if lattice.index_of_bits(&sx).is_some_and(|i| delta.contains(i)) {
                carrier.push(x);
                conj.extend(cx);
            }
        }
        let size = carrier.len();
        let mut id_of = alloc::vec![NO; g.order()];
        for (i, &x) in carrier.iter().enumerate() {
            id_of[x] = i as u32;
        }
        let inverse: Vec<u32> = carrier.iter().map(|&x| id_of[g.inv(x)]).collect();
        let s_ids: Vec<u32> = embed.iter().map(|&x| id_of[x]).collect();
        let mut l = Locality::from_parts(LocalityParts { p, s: sg, inverse, s_ids, delta: delta.clone(), conj, product: Vec::new(), labels: carrier.clone() });
        let mut product = alloc::vec![NO; size * size];
        for f in 0..size {
            for h in 0..size {
                if l.in_domain(&[f, h]) {
                    let id = id_of[g.mul(carrier[f], carrier[h])];
                    if id == NO {
                        return Err(Error::Inconsistent(format!("product of g{} and g{} leaves the carrier", carrier[f], carrier[h])));
                    }
                    product[f * size + h] = id;
                }
            }
        }
        l.product = product;
        Ok(l)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn delta(&self) -> &BitSet {
        &self.delta
    }

    pub fn objects(&self) -> Vec<usize> {
        self.delta.to_vec()
    }

    pub fn is_object(&self, p: usize) -> bool {
        self.delta.contains(p)
    }

    #[inline]
    pub fn inv(&self, f: usize) -> usize {
        self.inverse[f] as usize
    }

    /// External label of an element: the ambient group element for localities
    /// built from groups, the label of the smallest lift for quotients.
    pub fn label(&self, f: usize) -> usize {
        self.labels[f]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Carrier id of an element of `S`.
    pub fn s_id(&self, x: usize) -> usize {
        self.s_ids[x] as usize
    }

    /// The element of `S` with carrier id `f`, if any.
    pub fn s_elem(&self, f: usize) -> Option<usize> {
        let x = self.s_of_id[f];
        (x != NONE).then_some(x as usize)
    }

    /// `c_f` on `S`, with [`NONE`] outside `S_f`.
    pub fn conj_map(&self, f: usize) -> &[u16] {
        let m = self.s.order();
        &self.conj[f * m..(f + 1) * m]
    }

    pub fn s_f(&self, f: usize) -> BitSet {
        let m = self.s.order();
        BitSet::from_iter(m, self.conj_map(f).iter().enumerate().filter(|(_, &y)| y != NONE).map(|(x, _)| x))
    }

    /// `S_w` as an element set of `S`.
    pub fn s_w(&self, word: &[usize]) -> BitSet {
        let m = self.s.order();
        let mut cur: Vec<(u16, u16)> = (0..m as u16).map(|x| (x, x)).collect();
        for &f in word {
            let c = self.conj_map(f);
            cur.retain_mut(|(_, y)| {
                let z = c[*y as usize];
                *y = z;
                z != NONE
            });
        }
        BitSet::from_iter(m, cur.iter().map(|&(x, _)| x as usize))
    }

    pub fn in_domain(&self, word: &[usize]) -> bool {
        self.lattice.index_of_bits(&self.s_w(word)).is_some_and(|i| self.delta.contains(i))
    }

    #[inline]
    pub fn product2(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.product[f * self.size + g];
        (v != NO).then_some(v as usize)
    }

    /// `Pi(w)` for `w` in `D`.
    pub fn product(&self, word: &[usize]) -> Result<usize> {
        if !self.in_domain(word) {
            return Err(Error::NotInDomain);
        }
        self.fold(word).ok_or_else(|| Error::Inconsistent("binary product missing inside the domain".into()))
    }

    /// Left fold of binary products, without a domain test.
    pub fn fold(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(0usize, |acc, &f| self.product2(acc, f))
    }

    /// `x^f = Pi(f^-1, x, f)`.
    pub fn conjugate(&self, x: usize, f: usize) -> Result<usize> {
        self.product(&[self.inv(f), x, f])
    }

    /// Lattice index of `P^f` when `P <= S_f`.
    pub fn conjugate_subgroup(&self, p: usize, f: usize) -> Option<usize> {
        let c = self.conj_map(f);
        let elems = &self.lattice.get(p).elems;
        if elems.iter().any(|&x| c[x] == NONE) {
            return None;
        }
        self.lattice.index_of_bits(&BitSet::from_iter(self.s.order(), elems.iter().map(|&x| c[x] as usize)))
    }

    /// `N_L(P)` as carrier ids.
    pub fn normalizer_ids(&self, p: usize) -> Vec<usize> {
        (0..self.size).filter(|&f| self.conjugate_subgroup(p, f) == Some(p)).collect()
    }

    /// `C_L(P)` as carrier ids.
    pub fn centralizer_ids(&self, p: usize) -> Vec<usize> {
        let elems = &self.lattice.get(p).elems;
        (0..self.size).filter(|&f| elems.iter().all(|&x| self.conj_map(f)[x] as usize == x)).collect()
    }

    /// Tabulates the group on `ids` (which must contain 0 and be product-closed).
    pub fn group_on(&self, mut ids: Vec<usize>) -> Result<LocalGroup> {
        ids.sort_unstable();
        if ids.first() != Some(&0) {
            return Err(Error::Inconsistent("identity missing".into()));
        }
        let k = ids.len();
        let mut pos = alloc::vec![u16::MAX; self.size];
        for (i, &f) in ids.iter().enumerate() {
            pos[f] = i as u16;
        }
        let mut table = alloc::vec![0u16; k * k];
        for (i, &a) in ids.iter().enumerate() {
            for (j, &b) in ids.iter().enumerate() {
                let c = self.product2(a, b).ok_or_else(|| Error::Inconsistent(format!("product ({a}, {b}) undefined in a local subgroup")))?;
                if pos[c] == u16::MAX {
                    return Err(Error::Inconsistent(format!("product ({a}, {b}) leaves the local subgroup")));
                }
                table[i * k + j] = pos[c];
            }
        }
        Ok(LocalGroup { group: FiniteGroup::from_raw_table(k, table), ids })
    }

    /// `N_L(P)` as a group; `P` must be an object.
    pub fn normalizer_group(&self, p: usize) -> Result<LocalGroup> {
        if !self.is_object(p) {
            return Err(Error::NotAnObject);
        }
        self.group_on(self.normalizer_ids(p))
    }

    pub fn centralizer_group(&self, p: usize) -> Result<LocalGroup> {
        if !self.is_object(p) {
            return Err(Error::NotAnObject);
        }
        self.group_on(self.centralizer_ids(p))
    }

    /// The subgroup of a local group formed by the elements of a subgroup of `S`.
    pub fn local_subgroup_of_s(&self, lg: &LocalGroup, q: usize) -> Subgroup {
        let members = lg.ids.iter().enumerate().filter(|(_, &f)| self.s_elem(f).is_some_and(|x| self.lattice.sub(q).contains(x))).map(|(i, _)| i);
        Subgroup::from_bits_unchecked(BitSet::from_iter(lg.group.order(), members))
    }

    /// `N_L(P)` has characteristic p for every object `P`. Returns the first
    /// object where this fails.
    pub fn objective_char_p_witness(&self) -> Result<Option<usize>> {
        for p in self.delta.iter() {
            if !self.normalizer_group(p)?.group.is_char_p(self.p) {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    pub fn is_objective_char_p(&self) -> bool {
        matches!(self.objective_char_p_witness(), Ok(None))
    }

    /// `O_p(N_L(P)) = P`.
    pub fn is_l_radical(&self, p: usize) -> Result<bool> {
        let lg = self.normalizer_group(p)?;
        let op: BTreeSet<usize> = lg.group.o_p(self.p).elements().map(|i| lg.ids[i]).collect();
        let pset: BTreeSet<usize> = self.lattice.get(p).elems.iter().map(|&x| self.s_id(x)).collect();
        Ok(op == pset)
    }

    /// The fusion system on `S` generated by the maps `c_f`.
    pub fn fusion_system(&self) -> Result<FusionSystem> {
        let gens: BTreeSet<Vec<u16>> = (0..self.size).map(|f| self.conj_map(f).to_vec()).collect();
        FusionSystem::generate(self.s.clone(), self.p, gens.into_iter().collect())
    }

    /// Objective characteristic p with every centric radical subgroup of the
    /// fusion system an object.
    pub fn is_linking_locality(&self, f: &FusionSystem) -> bool {
        self.is_objective_char_p() && f.centric_radicals().into_iter().all(|r| self.is_object(r))
    }
}

#[cfg(test)]
mod tests;

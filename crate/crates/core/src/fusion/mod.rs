//! Fusion systems over finite p-groups.
//!
//! The p-group `S` is held as a standalone [`FiniteGroup`] together with its full
//! subgroup [`Lattice`]. For every subgroup `P` the system stores `Hom_F(P, S)`:
//! injective homomorphisms as image arrays indexed by elements of `S`, with
//! [`NONE`] outside `P`. `Hom_F(P, Q)` is the subset with image inside `Q`.
//! Composition reads left to right: `a.then(b)` applies `a` first.

mod classify;
mod saturation;
mod subsystem;

pub use classify::{Classification, NormalityRule, Profile};
pub use subsystem::{QuotientSystem, Subsystem};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, Lattice, Subgroup};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub const NONE: u16 = u16::MAX;

/// Largest order of `S` accepted by the constructors.
pub const MAX_S_ORDER: usize = 1024;

/// An injective homomorphism from the lattice subgroup `source`, with image the
/// lattice subgroup `image`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Morphism {
    pub source: usize,
    pub map: Vec<u16>,
    pub image: usize,
}

impl Morphism {
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().enumerate().filter(|(_, &y)| y != NONE).map(|(x, _)| x)
    }

    /// Whether this map agrees with `other` on every point of `other`'s domain.
    pub fn extends(&self, other: &Morphism) -> bool {
        other.domain().all(|x| self.map[x] == other.map[x])
    }

    pub fn fixes_pointwise(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&x| self.map[x] as usize == x)
    }
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    p: u64,
    s: FiniteGroup,
    lattice: Lattice,
    homs: Vec<Vec<Morphism>>,
}

impl FusionSystem {
    fn check_s(p: u64, s: &FiniteGroup) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s.order() > MAX_S_ORDER {
            return Err(Error::OrderBoundExceeded { bound: MAX_S_ORDER });
        }
        if !crate::group::is_power_of(s.order(), p) {
            return Err(Error::NotSylow { p });
        }
        Ok(())
    }

    /// `F_S(G)` for a Sylow p-subgroup `S` of `G`. The elements of the standalone
    /// copy of `S` are the members of `s` in increasing order.
    pub fn from_group(g: &FiniteGroup, s: &Subgroup, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !g.is_sylow(s, p) || !g.is_p_subgroup(s, p) {
            return Err(Error::NotSylow { p });
        }
        Self::from_conjugation(g, s, 0..g.order(), p)
    }

    /// The system on `t` generated by conjugation maps `c_x` for `x` in `elems`
    /// between subgroups of `t`. `elems` must be closed under products and
    /// inverses for the result to be closed without a further pass.
    pub fn from_conjugation<I: IntoIterator<Item = usize>>(g: &FiniteGroup, t: &Subgroup, elems: I, p: u64) -> Result<Self> {
        let (sg, embed) = g.subgroup_group(t);
        Self::check_s(p, &sg)?;
        let lattice = Lattice::new(&sg);
        let mut pos = alloc::vec![NONE; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i as u16;
        }
        let m = sg.order();
        let mut homs: Vec<BTreeSet<Morphism>> = alloc::vec![BTreeSet::new(); lattice.len()];
        let mut seen_conj: BTreeSet<Vec<u16>> = BTreeSet::new();
        for x in elems {
            // c_x on S_x = { s in T : s^x in T }
            let cx: Vec<u16> = embed.iter().map(|&e| pos[g.conj(e, x)]).collect();
            if !seen_conj.insert(cx.clone()) {
                continue;
            }
            let dom = BitSet::from_iter(m, (0..m).filter(|&i| cx[i] != NONE));
            for (pi, homs_p) in homs.iter_mut().enumerate() {
                if !lattice.sub(pi).bits().is_subset(&dom) {
                    continue;
                }
                homs_p.insert(Self::restrict_raw(&lattice, &cx, pi));
            }
        }
        Ok(FusionSystem { p, s: sg, lattice, homs: homs.into_iter().map(|h| h.into_iter().collect()).collect() })
    }

    /// The fusion system of the group `s` on itself.
    pub fn inner(s: FiniteGroup, p: u64) -> Result<Self> {
        Self::generate(s, p, Vec::new())
    }

    /// Smallest fusion system on `s` containing the given maps (each an image
    /// array over `s` with [`NONE`] outside a subgroup) and all inner ones.
    pub fn generate(s: FiniteGroup, p: u64, gens: Vec<Vec<u16>>) -> Result<Self> {
        Self::check_s(p, &s)?;
        let lattice = Lattice::new(&s);
        let mut homs: Vec<BTreeSet<Morphism>> = alloc::vec![BTreeSet::new(); lattice.len()];
        for x in 0..s.order() {
            let cx: Vec<u16> = (0..s.order()).map(|y| s.conj(y, x) as u16).collect();
            for (pi, h) in homs.iter_mut().enumerate() {
                h.insert(Self::restrict_raw(&lattice, &cx, pi));
            }
        }
        for map in gens {
            let mor = Self::validate_map(&s, &lattice, map)?;
            homs[mor.source].insert(mor);
        }
        let mut fs = FusionSystem { p, s, lattice, homs: Vec::new() };
        fs.homs = fs.close(homs);
        Ok(fs)
    }

    fn validate_map(s: &FiniteGroup, lattice: &Lattice, map: Vec<u16>) -> Result<Morphism> {
        let n = s.order();
        if map.len() != n {
            return Err(Error::Inconsistent("map length differs from |S|".into()));
        }
        let dom = BitSet::from_iter(n, (0..n).filter(|&x| map[x] != NONE));
        let source = lattice.index_of_bits(&dom).ok_or(Error::NotASubgroup)?;
        let elems = &lattice.get(source).elems;
        if elems.iter().any(|&x| map[x] as usize >= n) {
            return Err(Error::Inconsistent("image outside S".into()));
        }
        for &a in elems {
            for &b in elems {
                if map[s.mul(a, b)] as usize != s.mul(map[a] as usize, map[b] as usize) {
                    return Err(Error::Inconsistent(format!("map is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        let img = BitSet::from_iter(n, elems.iter().map(|&x| map[x] as usize));
        if img.count() != elems.len() {
            return Err(Error::Inconsistent("map is not injective".into()));
        }
        let image = lattice.index_of_bits(&img).ok_or(Error::NotASubgroup)?;
        Ok(Morphism { source, map, image })
    }

    /// Assembles a system from explicit hom sets without closing them. Used to
    /// build deliberately corrupted systems for verifier tests.
    pub fn from_parts_unchecked(p: u64, s: FiniteGroup, homs: Vec<Vec<Morphism>>) -> Self {
        let lattice = Lattice::new(&s);
        FusionSystem { p, s, lattice, homs }
    }

    fn restrict_raw(lattice: &Lattice, map: &[u16], to: usize) -> Morphism {
        let mut out = alloc::vec![NONE; map.len()];
        let elems = &lattice.get(to).elems;
        for &x in elems {
            out[x] = map[x];
        }
        let img = BitSet::from_iter(map.len(), elems.iter().map(|&x| map[x] as usize));
        Morphism { source: to, map: out, image: lattice.index_of_bits(&img).expect("image of a subgroup is a subgroup") }
    }

    /// Closes hom sets under inverses, restriction and composition.
    fn close(&self, mut homs: Vec<BTreeSet<Morphism>>) -> Vec<Vec<Morphism>> {
        loop {
            let mut added: Vec<Morphism> = Vec::new();
            for pi in 0..homs.len() {
                for phi in &homs[pi] {
                    let inv = self.inverse(phi);
                    if !homs[inv.source].contains(&inv) {
                        added.push(inv);
                    }
                    for &r in &self.lattice.get(pi).maximal {
                        let res = self.restrict(phi, r);
                        if !homs[r].contains(&res) {
                            added.push(res);
                        }
                    }
                    for psi in &homs[phi.image] {
                        let c = self.compose(phi, psi);
                        if !homs[pi].contains(&c) {
                            added.push(c);
                        }
                    }
                }
            }
            if added.is_empty() {
                return homs.into_iter().map(|h| h.into_iter().collect()).collect();
            }
            for m in added {
                homs[m.source].insert(m);
            }
        }
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

    pub fn elems(&self, p: usize) -> &[usize] {
        &self.lattice.get(p).elems
    }

    pub fn order_of(&self, p: usize) -> usize {
        self.lattice.order(p)
    }

    pub fn whole(&self) -> usize {
        self.lattice.whole()
    }

    /// `Hom_F(P, S)`.
    pub fn homs_from(&self, p: usize) -> &[Morphism] {
        &self.homs[p]
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(Vec::len).sum()
    }

    pub fn hom(&self, p: usize, q: usize) -> impl Iterator<Item = &Morphism> + '_ {
        self.homs[p].iter().filter(move |m| self.lattice.is_sub(m.image, q))
    }

    pub fn aut(&self, p: usize) -> impl Iterator<Item = &Morphism> + '_ {
        self.isos(p, p)
    }

    /// `Iso_F(P, Q)`.
    pub fn isos(&self, p: usize, q: usize) -> impl Iterator<Item = &Morphism> + '_ {
        self.homs[p].iter().filter(move |m| m.image == q)
    }

    /// The F-conjugacy class of `p`, as sorted lattice indices.
    pub fn class(&self, p: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.homs[p].iter().map(|m| m.image).collect();
        set.into_iter().collect()
    }

    /// Lattice index of `P` restricted images, i.e. `P phi`.
    pub fn image_of(&self, phi: &Morphism, sub: usize) -> usize {
        let img = BitSet::from_iter(self.s.order(), self.elems(sub).iter().map(|&x| phi.apply(x)));
        self.lattice.index_of_bits(&img).expect("image of a subgroup is a subgroup")
    }

    pub fn compose(&self, a: &Morphism, b: &Morphism) -> Morphism {
        let mut map = alloc::vec![NONE; self.s.order()];
        for &x in self.elems(a.source) {
            map[x] = b.map[a.map[x] as usize];
        }
        let image = self.image_of(b, a.image);
        Morphism { source: a.source, map, image }
    }

    pub fn inverse(&self, a: &Morphism) -> Morphism {
        let mut map = alloc::vec![NONE; self.s.order()];
        for &x in self.elems(a.source) {
            map[a.map[x] as usize] = x as u16;
        }
        Morphism { source: a.image, map, image: a.source }
    }

    pub fn restrict(&self, a: &Morphism, to: usize) -> Morphism {
        Self::restrict_raw(&self.lattice, &a.map, to)
    }

    /// Conjugation by `x` restricted to `p` (requires `p^x <= S`, always true here).
    pub fn conjugation(&self, x: usize, p: usize) -> Morphism {
        let cx: Vec<u16> = (0..self.s.order()).map(|y| self.s.conj(y, x) as u16).collect();
        Self::restrict_raw(&self.lattice, &cx, p)
    }

    pub fn identity_on(&self, p: usize) -> Morphism {
        self.conjugation(0, p)
    }

    /// `Aut_S(P)`, as image arrays.
    pub fn aut_s(&self, p: usize) -> BTreeSet<Vec<u16>> {
        let n = self.lattice.get(p).normalizer;
        self.elems(n).iter().map(|&x| self.conjugation(x, p).map).collect()
    }

    /// `Inn(P)`, as image arrays.
    pub fn inn(&self, p: usize) -> BTreeSet<Vec<u16>> {
        self.elems(p).iter().map(|&x| self.conjugation(x, p).map).collect()
    }

    /// `Aut_F(P)` as a group. Element 0 is the identity; the rest follow the
    /// stored order of the automorphisms.
    pub fn aut_group(&self, p: usize) -> (FiniteGroup, Vec<Morphism>) {
        let id = self.identity_on(p);
        let mut auts: Vec<Morphism> = alloc::vec![id.clone()];
        auts.extend(self.aut(p).filter(|m| **m != id).cloned());
        let index: BTreeMap<&Vec<u16>, usize> = auts.iter().enumerate().map(|(i, m)| (&m.map, i)).collect();
        let k = auts.len();
        let mut table = alloc::vec![0u16; k * k];
        for (i, a) in auts.iter().enumerate() {
            for (j, b) in auts.iter().enumerate() {
                let c = self.compose(a, b);
                table[i * k + j] = index[&c.map] as u16;
            }
        }
        (FiniteGroup::from_raw_table(k, table), auts)
    }

    /// A morphism in `Hom_F(D, S)` extending `phi`, if any.
    pub fn extension<'a>(&'a self, phi: &'a Morphism, d: usize) -> impl Iterator<Item = &'a Morphism> + 'a {
        self.homs[d].iter().filter(move |m| m.extends(phi))
    }

    pub fn is_fully_normalized(&self, p: usize) -> bool {
        let n = self.order_of(self.lattice.get(p).normalizer);
        self.class(p).into_iter().all(|q| self.order_of(self.lattice.get(q).normalizer) <= n)
    }

    pub fn is_fully_centralized(&self, p: usize) -> bool {
        let c = self.order_of(self.lattice.get(p).centralizer);
        self.class(p).into_iter().all(|q| self.order_of(self.lattice.get(q).centralizer) <= c)
    }

    /// Hom sets translated through an element embedding, for comparing systems
    /// that live on different copies of the same group.
    pub fn morphism_set(&self, embed: &[usize]) -> BTreeSet<Vec<(usize, usize)>> {
        self.homs
            .iter()
            .flatten()
            .map(|m| {
                let mut pairs: Vec<(usize, usize)> = m.domain().map(|x| (embed[x], embed[m.apply(x)])).collect();
                pairs.sort_unstable();
                pairs
            })
            .collect()
    }

    /// A failure of the fusion-system axioms: missing inner map, missing
    /// inverse, restriction or composite. Returns a description of the first one found.
    pub fn axiom_violation(&self) -> Option<String> {
        if self.homs.len() != self.lattice.len() {
            return Some("hom sets do not cover the subgroup lattice".into());
        }
        let sets: Vec<BTreeSet<&Vec<u16>>> = self.homs.iter().map(|h| h.iter().map(|m| &m.map).collect()).collect();
        for pi in 0..self.lattice.len() {
            for x in 0..self.s.order() {
                let c = self.conjugation(x, pi);
                if !sets[pi].contains(&c.map) {
                    return Some(format!("missing conjugation by s{x} on P{pi}"));
                }
            }
            for phi in &self.homs[pi] {
                if phi.source != pi {
                    return Some(format!("morphism filed under the wrong source P{pi}"));
                }
                let inv = self.inverse(phi);
                if !sets[inv.source].contains(&inv.map) {
                    return Some(format!("missing inverse of a map P{pi} -> P{}", phi.image));
                }
                for &r in &self.lattice.get(pi).maximal {
                    if !sets[r].contains(&self.restrict(phi, r).map) {
                        return Some(format!("missing restriction of a map on P{pi} to P{r}"));
                    }
                }
                for psi in &self.homs[phi.image] {
                    if !sets[pi].contains(&self.compose(phi, psi).map) {
                        return Some(format!("missing composite P{pi} -> P{} -> P{}", phi.image, psi.image));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests;

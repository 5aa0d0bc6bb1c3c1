use super::{FusionSystem, Morphism, NONE};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Lattice, Subgroup};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

/// A fusion system on a subgroup `T` of the parent's `S`, carried on its own
/// copy of `T`. `embed[i]` is the parent element of `T`-element `i`.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub system: FusionSystem,
    pub embed: Vec<usize>,
    /// Parent lattice index of `T`.
    pub t: usize,
}

impl Subsystem {
    /// Parent lattice index of a subgroup given in this system's lattice.
    pub fn to_parent(&self, parent: &FusionSystem, i: usize) -> usize {
        let bits = BitSet::from_iter(parent.s.order(), self.system.elems(i).iter().map(|&x| self.embed[x]));
        parent.lattice.index_of_bits(&bits).expect("embedded subgroup")
    }

    /// This system's lattice index of a parent subgroup contained in `T`.
    pub fn from_parent(&self, parent: &FusionSystem, j: usize) -> Option<usize> {
        if !parent.lattice.is_sub(j, self.t) {
            return None;
        }
        let pos = self.positions(parent.s.order());
        let bits = BitSet::from_iter(self.system.s.order(), parent.elems(j).iter().map(|&x| pos[x] as usize));
        self.system.lattice.index_of_bits(&bits)
    }

    fn positions(&self, parent_order: usize) -> Vec<u16> {
        let mut pos = alloc::vec![NONE; parent_order];
        for (i, &x) in self.embed.iter().enumerate() {
            pos[x] = i as u16;
        }
        pos
    }

    /// Every morphism of the subsystem, rewritten in parent coordinates.
    pub fn lifted_morphisms(&self, parent: &FusionSystem) -> Vec<Morphism> {
        let n = parent.s.order();
        let mut out = Vec::new();
        for a in 0..self.system.lattice.len() {
            let src = self.to_parent(parent, a);
            for m in self.system.homs_from(a) {
                let mut map = alloc::vec![NONE; n];
                for x in m.domain() {
                    map[self.embed[x]] = self.embed[m.apply(x)] as u16;
                }
                let image = self.to_parent(parent, m.image);
                out.push(Morphism { source: src, map, image });
            }
        }
        out
    }

    pub fn morphism_set(&self) -> BTreeSet<Vec<(usize, usize)>> {
        self.system.morphism_set(&self.embed)
    }
}

/// `F/Z` for a central subgroup `Z`, with the projection `S -> S/Z` and the
/// lattice correspondence `P -> PZ/Z`.
#[derive(Clone, Debug)]
pub struct QuotientSystem {
    pub system: FusionSystem,
    pub projection: Vec<usize>,
    pub lattice_map: Vec<usize>,
}

impl FusionSystem {
    /// The subsystem on `t` consisting of the morphisms between subgroups of `t`
    /// accepted by `keep`.
    pub fn restricted<F: Fn(&Morphism) -> bool>(&self, t: usize, keep: F) -> Subsystem {
        let (tg, embed) = self.s.subgroup_group(self.lattice.sub(t));
        let tlat = Lattice::new(&tg);
        let mut pos = alloc::vec![NONE; self.s.order()];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i as u16;
        }
        let m = tg.order();
        let mut homs: Vec<Vec<Morphism>> = Vec::with_capacity(tlat.len());
        for a in 0..tlat.len() {
            let pa = self.lattice.index_of_bits(&BitSet::from_iter(self.s.order(), tlat.get(a).elems.iter().map(|&x| embed[x]))).expect("embedded subgroup");
            let mut list = Vec::new();
            for phi in &self.homs[pa] {
                if !self.lattice.is_sub(phi.image, t) || !keep(phi) {
                    continue;
                }
                let mut map = alloc::vec![NONE; m];
                for &x in &tlat.get(a).elems {
                    map[x] = pos[phi.apply(embed[x])];
                }
                let img = BitSet::from_iter(m, tlat.get(a).elems.iter().map(|&x| map[x] as usize));
                list.push(Morphism { source: a, map, image: tlat.index_of_bits(&img).expect("image subgroup") });
            }
            list.sort();
            homs.push(list);
        }
        Subsystem { system: FusionSystem { p: self.p, s: tg, lattice: tlat, homs }, embed, t }
    }

    /// `N_S^K(Q) = { s in N_S(Q) : c_s|Q in K }`.
    pub fn k_normalizer_subgroup(&self, q: usize, k: &BTreeSet<Vec<u16>>) -> usize {
        let n = self.lattice.get(q).normalizer;
        let members = self.elems(n).iter().copied().filter(|&x| k.contains(&self.conjugation(x, q).map));
        self.lattice.index_of_bits(&BitSet::from_iter(self.s.order(), members)).expect("N_S^K(Q) is a subgroup")
    }

    /// `K^phi = { phi^-1 k phi }` on the image of `phi`.
    pub fn conjugate_auts(&self, k: &BTreeSet<Vec<u16>>, phi: &Morphism) -> BTreeSet<Vec<u16>> {
        let inv = self.inverse(phi);
        let elems = self.elems(phi.image);
        k.iter()
            .map(|kappa| {
                let mut m = alloc::vec![NONE; self.s.order()];
                for &y in elems {
                    m[y] = phi.map[kappa[inv.apply(y)] as usize];
                }
                m
            })
            .collect()
    }

    pub fn is_fully_k_normalized(&self, q: usize, k: &BTreeSet<Vec<u16>>) -> bool {
        let here = self.order_of(self.k_normalizer_subgroup(q, k));
        self.homs[q].iter().all(|phi| {
            let kphi = self.conjugate_auts(k, phi);
            self.order_of(self.k_normalizer_subgroup(phi.image, &kphi)) <= here
        })
    }

    /// `N_F^K(Q)` without checking that `Q` is fully K-normalized.
    pub fn k_normalizer_unchecked(&self, q: usize, k: &BTreeSet<Vec<u16>>) -> Subsystem {
        let t = self.k_normalizer_subgroup(q, k);
        self.restricted(t, |phi| {
            let aq = self.lattice.join(&self.s, phi.source, q);
            self.extension(phi, aq).any(|ext| {
                let on_q = self.restrict(ext, q);
                on_q.image == q && k.contains(&on_q.map)
            })
        })
    }

    /// `N_F^K(Q)` for `K <= Aut_F(Q)` and `Q` fully K-normalized.
    pub fn k_normalizer(&self, q: usize, k: &BTreeSet<Vec<u16>>) -> Result<Subsystem> {
        let autf: BTreeSet<&Vec<u16>> = self.aut(q).map(|m| &m.map).collect();
        if k.iter().any(|m| !autf.contains(m)) {
            return Err(Error::Inconsistent("K is not contained in Aut_F(Q)".into()));
        }
        if !self.is_fully_k_normalized(q, k) {
            return Err(Error::NotFullyKNormalized);
        }
        Ok(self.k_normalizer_unchecked(q, k))
    }

    pub fn aut_f_set(&self, q: usize) -> BTreeSet<Vec<u16>> {
        self.aut(q).map(|m| m.map.clone()).collect()
    }

    /// `C_F(Q)`, the K-normalizer for trivial `K`.
    pub fn centralizer_system(&self, q: usize) -> Subsystem {
        let k: BTreeSet<Vec<u16>> = [self.identity_on(q).map].into_iter().collect();
        self.k_normalizer_unchecked(q, &k)
    }

    /// `N_F(Q)`, the K-normalizer for `K = Aut_F(Q)`.
    pub fn normalizer_system(&self, q: usize) -> Subsystem {
        self.k_normalizer_unchecked(q, &self.aut_f_set(q))
    }

    /// `F/Z` for `Z <= Z(F)`.
    pub fn quotient_by_central(&self, z: usize) -> Result<QuotientSystem> {
        if !self.is_central(z) {
            return Err(Error::NotCentral);
        }
        let q = self.s.quotient(self.lattice.sub(z))?;
        let m = q.group.order();
        let mut gens: BTreeSet<Vec<u16>> = BTreeSet::new();
        for pi in self.lattice.overgroups_of(z) {
            for phi in &self.homs[pi] {
                let mut map = alloc::vec![NONE; m];
                for &x in self.elems(pi) {
                    map[q.projection[x]] = q.projection[phi.apply(x)] as u16;
                }
                gens.insert(map);
            }
        }
        let system = FusionSystem::generate(q.group.clone(), self.p, gens.into_iter().collect())?;
        let lattice_map = (0..self.lattice.len())
            .map(|i| {
                let img = BitSet::from_iter(m, self.elems(i).iter().map(|&x| q.projection[x]));
                system.lattice.index_of_bits(&img).expect("image subgroup")
            })
            .collect();
        Ok(QuotientSystem { system, projection: q.projection, lattice_map })
    }

    /// `F_T(N)` for `N` normal in `G`, where `self = F_S(G)` and `s` is the
    /// subgroup of `G` that `self` was built on.
    pub fn normal_subgroup_system(&self, g: &FiniteGroup, s: &Subgroup, n: &Subgroup) -> Result<Subsystem> {
        if !g.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let t = n.intersection(s);
        if !g.is_sylow_in(&t, n, self.p) {
            return Err(Error::NotSylowInN);
        }
        let system = FusionSystem::from_conjugation(g, &t, n.elements(), self.p)?;
        let s_elems: Vec<usize> = s.elements().collect();
        let embed: Vec<usize> = t.elements().map(|x| s_elems.binary_search(&x).expect("T <= S")).collect();
        let tbits = BitSet::from_iter(self.s.order(), embed.iter().copied());
        let ti = self.lattice.index_of_bits(&tbits).ok_or(Error::NotASubgroup)?;
        Ok(Subsystem { system, embed, t: ti })
    }

    /// Largest `X <= C_S(T)` such that every morphism of `e` extends to a
    /// morphism of `F` that is the identity on `X`.
    pub fn centralizer_of_subsystem(&self, e: &Subsystem) -> Result<usize> {
        let c = self.lattice.get(e.t).centralizer;
        let lifted = e.lifted_morphisms(self);
        let qualifies = |x: usize| {
            let xe = self.elems(x);
            lifted.iter().all(|phi| {
                let ax = self.lattice.join(&self.s, phi.source, x);
                self.extension(phi, ax).any(|ext| ext.fixes_pointwise(xe))
            })
        };
        let good: Vec<usize> = self.lattice.subgroups_of(c).into_iter().filter(|&x| qualifies(x)).collect();
        let top = *good
            .iter()
            .max_by_key(|&&x| (self.order_of(x), x))
            .ok_or_else(|| Error::Inconsistent("a morphism of the subsystem does not extend in F".into()))?;
        if let Some(&bad) = good.iter().find(|&&x| !self.lattice.is_sub(x, top)) {
            return Err(Error::Inconsistent(format!("no largest centralizing subgroup: P{bad} not below P{top}")));
        }
        Ok(top)
    }
}

impl FiniteGroup {
    pub fn is_sylow_in(&self, t: &Subgroup, n: &Subgroup, p: u64) -> bool {
        t.is_subgroup_of(n) && crate::group::is_power_of(t.order(), p) && t.order() == crate::group::p_part(n.order(), p)
    }
}

//! Finite groups on dense element indices.
//!
//! Elements are `0..order()` with `0` the identity. Products come from a full
//! multiplication table built once at construction. For permutation input the
//! element numbering is the breadth-first enumeration of generator words
//! (generators tried in input order), so it is a pure function of the input.
//!
//! Permutations act on the right: the product `x * y` applies `x` first.
//! Conjugation is `x^g = g^-1 x g`.

mod cores;
mod lattice;
mod perm;
mod quotient;

pub use cores::Cores;
pub use lattice::{Lattice, SubgroupInfo};
pub use perm::perm_from_cycles;
pub use quotient::Quotient;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

pub const DEFAULT_ORDER_BOUND: usize = 5040;

/// A subgroup, as a member set of its parent group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup(BitSet);

impl Subgroup {
    pub fn order(&self) -> usize {
        self.0.count()
    }
    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
    pub fn bits(&self) -> &BitSet {
        &self.0
    }
    pub fn into_bits(self) -> BitSet {
        self.0
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.intersection(&other.0))
    }
    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
    /// Wraps a member set without checking closure.
    pub fn from_bits_unchecked(bits: BitSet) -> Subgroup {
        Subgroup(bits)
    }
}

/// Report ordering: larger subgroups first, ties broken by canonical order.
pub fn report_order(a: &Subgroup, b: &Subgroup) -> core::cmp::Ordering {
    b.order().cmp(&a.order()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug)]
struct Perms {
    degree: usize,
    images: Vec<u16>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<u16>,
    perms: Option<Perms>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn is_power_of(n: usize, p: u64) -> bool {
    let mut n = n as u64;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let mut n = n as u64;
    let mut r = 1u64;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r as usize
}

pub fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

impl FiniteGroup {
    /// Builds the group generated by permutations of `0..degree`, each given as
    /// its image list.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], bound: usize) -> Result<Self> {
        let bound = bound.min(u16::MAX as usize);
        for g in gens {
            perm::validate(degree, g)?;
        }
        let gens: Vec<Vec<u16>> = gens.iter().filter(|g| g.iter().enumerate().any(|(i, &x)| i != x)).map(|g| g.iter().map(|&x| x as u16).collect()).collect();
        let identity: Vec<u16> = (0..degree as u16).collect();
        let mut index: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
        let mut elems: Vec<Vec<u16>> = alloc::vec![identity.clone()];
        index.insert(identity, 0);
        // right[e * k + j] = index of e * gens[j]; parent[e] = (e', j) with e = e' * gens[j]
        let k = gens.len();
        let mut right: Vec<u16> = Vec::new();
        let mut parent: Vec<(usize, usize)> = alloc::vec![(0, 0)];
        let mut head = 0;
        while head < elems.len() {
            for (j, g) in gens.iter().enumerate() {
                let prod: Vec<u16> = elems[head].iter().map(|&x| g[x as usize]).collect();
                let id = match index.get(&prod) {
                    Some(&id) => id,
                    None => {
                        if elems.len() >= bound {
                            return Err(Error::OrderBoundExceeded { bound });
                        }
                        let id = elems.len();
                        index.insert(prod.clone(), id);
                        elems.push(prod);
                        parent.push((head, j));
                        id
                    }
                };
                right.push(id as u16);
            }
            head += 1;
        }
        let n = elems.len();
        let mut table = alloc::vec![0u16; n * n];
        for a in 0..n {
            table[a * n] = a as u16;
            for b in 1..n {
                let (pb, j) = parent[b];
                let ab = table[a * n + pb] as usize;
                table[a * n + b] = right[ab * k + j];
            }
        }
        let images: Vec<u16> = elems.into_iter().flatten().collect();
        Ok(Self::assemble(n, table, Some(Perms { degree, images })))
    }

    /// Builds a group from a Cayley table. The identity is relabelled to 0 if needed.
    pub fn from_table(rows: &[Vec<usize>], bound: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > bound.min(u16::MAX as usize) {
            return Err(Error::OrderBoundExceeded { bound });
        }
        for r in rows {
            if r.len() != n || r.iter().any(|&x| x >= n) {
                return Err(Error::InvalidTable("rows must be length n with entries < n".into()));
            }
            let distinct: BTreeSet<_> = r.iter().collect();
            if distinct.len() != n {
                return Err(Error::InvalidTable("row is not a permutation".into()));
            }
        }
        for c in 0..n {
            let distinct: BTreeSet<_> = rows.iter().map(|r| r[c]).collect();
            if distinct.len() != n {
                return Err(Error::InvalidTable("column is not a permutation".into()));
            }
        }
        let e = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x)).ok_or_else(|| Error::InvalidTable("no identity".into()))?;
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = alloc::vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u16;
            }
        }
        let g = Self::assemble(n, table, None);
        // Associativity against a generating set suffices (Light's test).
        for a in 0..n {
            for b in 0..n {
                for &s in &g.gens {
                    let s = s as usize;
                    if g.mul(g.mul(a, b), s) != g.mul(a, g.mul(b, s)) {
                        return Err(Error::InvalidTable("not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    fn assemble(n: usize, table: Vec<u16>, perms: Option<Perms>) -> Self {
        let mut inv = alloc::vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let mut g = FiniteGroup { n, table, inv, gens: Vec::new(), perms };
        g.gens = g.generators_of(&g.whole()).into_iter().map(|x| x as u16).collect();
        g
    }

    pub fn trivial() -> Self {
        Self::assemble(1, alloc::vec![0], None)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, mut k: usize) -> usize {
        let (mut acc, mut base) = (0, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        self.gens.iter().map(|&x| x as usize).collect()
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    /// Image list of element `x` in the defining permutation representation.
    pub fn perm_of(&self, x: usize) -> Option<&[u16]> {
        self.perms.as_ref().map(|p| &p.images[x * p.degree..(x + 1) * p.degree])
    }

    /// Nontrivial cycles of `x`, on 1-based points.
    pub fn cycles_of(&self, x: usize) -> Option<Vec<Vec<usize>>> {
        self.perm_of(x).map(perm::cycles)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(BitSet::full(self.n))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(BitSet::from_iter(self.n, [0]))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize)))
    }

    /// Subgroup generated by `gens`.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        let gens: Vec<usize> = gens.into_iter().filter(|&x| x != 0).collect();
        let mut set = BitSet::new(self.n);
        set.insert(0);
        let mut list = alloc::vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let e = list[head];
            for &g in &gens {
                let y = self.mul(e, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            head += 1;
        }
        Subgroup(set)
    }

    /// `<H, x>`.
    pub fn extend(&self, h: &Subgroup, x: usize) -> Subgroup {
        if h.contains(x) {
            return h.clone();
        }
        let mut gens = self.generators_of(h);
        gens.push(x);
        self.closure(gens)
    }

    pub fn generators_of(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for x in h.elements() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(gens.iter().copied());
            }
        }
        gens
    }

    pub fn subgroup_from_elements<I: IntoIterator<Item = usize>>(&self, elems: I) -> Result<Subgroup> {
        let mut set = BitSet::new(self.n);
        for x in elems {
            if x >= self.n {
                return Err(Error::NotASubgroup);
            }
            set.insert(x);
        }
        if !set.contains(0) {
            return Err(Error::NotASubgroup);
        }
        let members = set.to_vec();
        for &a in &members {
            for &b in &members {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup(set))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.generators_of(a);
        gens.extend(self.generators_of(b));
        self.closure(gens)
    }

    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        Subgroup(BitSet::from_iter(self.n, h.elements().map(|x| self.conj(x, g))))
    }

    pub fn normalizes(&self, g: usize, h: &Subgroup) -> bool {
        self.generators_of(h).into_iter().all(|x| h.contains(self.conj(x, g)))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.generators_of(h);
        Subgroup(BitSet::from_iter(self.n, (0..self.n).filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))))))
    }

    /// Centralizer of an arbitrary element set.
    pub fn centralizer_of_set<I: IntoIterator<Item = usize>>(&self, xs: I) -> Subgroup {
        let xs: Vec<usize> = xs.into_iter().collect();
        Subgroup(BitSet::from_iter(self.n, (0..self.n).filter(|&g| xs.iter().all(|&x| self.mul(x, g) == self.mul(g, x)))))
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_of_set(self.generators_of(h))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_set(self.generators())
    }

    /// `N` is normal in `H` (both subgroups of this group).
    pub fn is_normal_in(&self, n: &Subgroup, h: &Subgroup) -> bool {
        n.is_subgroup_of(h) && self.generators_of(h).into_iter().all(|g| self.normalizes(g, n))
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.gens.iter().all(|&g| self.normalizes(g as usize, n))
    }

    /// Smallest normal subgroup of `within` containing `xs`.
    pub fn normal_closure_in<I: IntoIterator<Item = usize>>(&self, xs: I, within: &Subgroup) -> Subgroup {
        let conj_by = self.generators_of(within);
        let mut h = self.closure(xs);
        loop {
            let mut grown = false;
            for x in self.generators_of(&h) {
                for &g in &conj_by {
                    let y = self.conj(x, g);
                    if !h.contains(y) {
                        h = self.extend(&h, y);
                        grown = true;
                    }
                }
            }
            if !grown {
                return h;
            }
        }
    }

    pub fn normal_closure<I: IntoIterator<Item = usize>>(&self, xs: I) -> Subgroup {
        self.normal_closure_in(xs, &self.whole())
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = BitSet::new(self.n);
        let mut out = Vec::new();
        for x in 0..self.n {
            if seen.contains(x) {
                continue;
            }
            let cls = BitSet::from_iter(self.n, (0..self.n).map(|g| self.conj(x, g)));
            seen.union_with(&cls);
            out.push(cls.to_vec());
        }
        out
    }

    pub fn is_p_subgroup(&self, h: &Subgroup, p: u64) -> bool {
        is_power_of(h.order(), p)
    }

    pub fn is_sylow(&self, h: &Subgroup, p: u64) -> bool {
        h.order() == p_part(self.n, p)
    }

    /// A Sylow `p`-subgroup: grown greedily through normalizers, then replaced by
    /// its canonically smallest conjugate.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p_part(self.n, p);
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let n = self.normalizer(&s);
            let x = n
                .elements()
                .find(|&x| !s.contains(x) && is_power_of(self.element_order(x), p))
                .expect("a p-subgroup below Sylow order has a p-element in its normalizer outside it");
            s = self.extend(&s, x);
        }
        self.canonical_conjugate(&s)
    }

    /// Canonically smallest conjugate of `h`.
    pub fn canonical_conjugate(&self, h: &Subgroup) -> Subgroup {
        (0..self.n).map(|g| self.conjugate(h, g)).min().expect("nonempty group")
    }

    /// The subgroup `h` as a group in its own right. Elements are numbered in
    /// increasing parent index; the returned vector maps new indices to parent ones.
    pub fn subgroup_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems: Vec<usize> = h.elements().collect();
        let m = elems.len();
        let mut pos = alloc::vec![u16::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i as u16;
        }
        let mut table = alloc::vec![0u16; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = pos[self.mul(a, b)];
            }
        }
        let perms = self
            .perms
            .as_ref()
            .map(|p| Perms { degree: p.degree, images: elems.iter().flat_map(|&x| p.images[x * p.degree..(x + 1) * p.degree].iter().copied()).collect() });
        (Self::assemble(m, table, perms), elems)
    }

    /// Builds a group from an explicit table in which 0 is the identity. Used for
    /// groups that arise from other structures (automorphism groups, localities).
    pub fn from_raw_table(n: usize, table: Vec<u16>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        Self::assemble(n, table, None)
    }

    /// All normal subgroups, in canonical order.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let minimal: Vec<Subgroup> = self.conjugacy_classes().into_iter().map(|c| self.normal_closure([c[0]])).collect();
        let mut frontier: Vec<Subgroup> = alloc::vec![self.trivial_subgroup()];
        found.insert(self.trivial_subgroup());
        while let Some(h) = frontier.pop() {
            for m in &minimal {
                if m.is_subgroup_of(&h) {
                    continue;
                }
                let j = self.join(&h, m);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        found.into_iter().collect()
    }
}

use super::{Locality, LocalityParts, NO};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fusion::NONE;
use crate::group::Subgroup;
use alloc::format;
use alloc::vec::Vec;

/// `L/N` for a partial normal subgroup `N`, with the projection on carrier ids
/// and on elements of `S`.
#[derive(Clone, Debug)]
pub struct LocalityQuotient {
    pub locality: Locality,
    pub projection: Vec<usize>,
    pub s_projection: Vec<usize>,
    /// Maximal cosets, indexed by quotient id.
    pub cosets: Vec<BitSet>,
}

impl Locality {
    /// Checks that `n` (a set of carrier ids) is a partial normal subgroup:
    /// closed under inversion, under products inside the domain, and under
    /// conjugation by every element of `L` where defined.
    pub fn check_partial_normal(&self, n: &BitSet) -> Result<()> {
        if !n.contains(0) {
            return Err(Error::NotPartialNormal("identity missing".into()));
        }
        let members = n.to_vec();
        for &x in &members {
            if !n.contains(self.inv(x)) {
                return Err(Error::NotPartialNormal(format!("inverse of {x} missing")));
            }
            for &y in &members {
                if let Some(z) = self.product2(x, y) {
                    if !n.contains(z) {
                        return Err(Error::NotPartialNormal(format!("product ({x}, {y}) leaves N")));
                    }
                }
            }
        }
        for f in 0..self.size {
            for &x in &members {
                if let Ok(y) = self.conjugate(x, f) {
                    if !n.contains(y) {
                        return Err(Error::NotPartialNormal(format!("{x}^{f} leaves N")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `N f = { Pi(n, f) : n in N, (n, f) in D }`.
    pub fn right_coset(&self, n: &[usize], f: usize) -> BitSet {
        BitSet::from_iter(self.size, n.iter().filter_map(|&x| self.product2(x, f)))
    }

    /// The quotient locality `L/N`. Its elements are the maximal right cosets
    /// of `N`, numbered by smallest member.
    pub fn quotient(&self, n: &BitSet) -> Result<LocalityQuotient> {
        self.check_partial_normal(n)?;
        let members = n.to_vec();
        let all: Vec<BitSet> = (0..self.size).map(|f| self.right_coset(&members, f)).collect();
        let mut cosets: Vec<BitSet> = Vec::new();
        for c in &all {
            let maximal = !all.iter().any(|d| d != c && c.is_subset(d));
            if maximal && !cosets.contains(c) {
                cosets.push(c.clone());
            }
        }
        cosets.sort_by_key(|c| c.min());
        let mut projection = alloc::vec![usize::MAX; self.size];
        for (i, c) in cosets.iter().enumerate() {
            for f in c.iter() {
                if projection[f] != usize::MAX {
                    return Err(Error::Inconsistent(format!("maximal cosets overlap at {f}")));
                }
                projection[f] = i;
            }
        }
        if let Some(f) = projection.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Inconsistent(format!("{f} lies in no maximal coset")));
        }
        let k = cosets.len();

        let m = self.s.order();
        let t = Subgroup::from_bits_unchecked(BitSet::from_iter(m, (0..m).filter(|&x| n.contains(self.s_id(x)))));
        let sq = self.s.quotient(&t).map_err(|_| Error::Inconsistent("S cap N is not normal in S".into()))?;
        let mb = sq.group.order();
        let mut sbar_ids = alloc::vec![NO; mb];
        for x in 0..m {
            let want = projection[self.s_id(x)] as u32;
            let slot = &mut sbar_ids[sq.projection[x]];
            if *slot != NO && *slot != want {
                return Err(Error::Inconsistent(format!("image of S is not S/(S cap N) at s={x}")));
            }
            *slot = want;
        }

        let mut conj = alloc::vec![NONE; k * mb];
        for (f, &a) in projection.iter().enumerate() {
            for (x, &y) in self.conj_map(f).iter().enumerate() {
                if y == NONE {
                    continue;
                }
                let (xb, yb) = (sq.projection[x], sq.projection[y as usize] as u16);
                let slot = &mut conj[a * mb + xb];
                if *slot != NONE && *slot != yb {
                    return Err(Error::Inconsistent(format!("conjugation by coset {a} is not well defined")));
                }
                *slot = yb;
            }
        }

        let mut product = alloc::vec![NO; k * k];
        for f in 0..self.size {
            for g in 0..self.size {
                if let Some(h) = self.product2(f, g) {
                    let (a, b, c) = (projection[f], projection[g], projection[h] as u32);
                    let slot = &mut product[a * k + b];
                    if *slot != NO && *slot != c {
                        return Err(Error::Inconsistent(format!("product of cosets {a}, {b} depends on lifts")));
                    }
                    *slot = c;
                }
            }
        }

        let mut inverse = alloc::vec![NO; k];
        for f in 0..self.size {
            let (a, b) = (projection[f], projection[self.inv(f)] as u32);
            if inverse[a] != NO && inverse[a] != b {
                return Err(Error::Inconsistent(format!("inverse of coset {a} depends on lifts")));
            }
            inverse[a] = b;
        }

        let sbar_lattice = crate::group::Lattice::new(&sq.group);
        let mut delta = BitSet::new(sbar_lattice.len());
        for p in self.delta.iter() {
            let img = BitSet::from_iter(mb, self.lattice.get(p).elems.iter().map(|&x| sq.projection[x]));
            delta.insert(sbar_lattice.index_of_bits(&img).expect("image subgroup"));
        }
        let labels = cosets.iter().map(|c| self.labels[c.min().expect("nonempty coset")]).collect();
        let locality = Locality::from_parts(LocalityParts { p: self.p, s: sq.group, inverse, s_ids: sbar_ids, delta, conj, product, labels });
        Ok(LocalityQuotient { locality, projection, s_projection: sq.projection, cosets })
    }
}

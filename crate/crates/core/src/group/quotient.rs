use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use alloc::vec::Vec;

/// `G/N` with the natural projection. Cosets are numbered by increasing
/// minimal representative, so the identity coset is 0.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub reps: Vec<usize>,
}

impl Quotient {
    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent_order: usize, h: &Subgroup) -> Subgroup {
        Subgroup(crate::bitset::BitSet::from_iter(parent_order, (0..parent_order).filter(|&g| h.contains(self.projection[g]))))
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        Subgroup(crate::bitset::BitSet::from_iter(self.group.order(), h.elements().map(|g| self.projection[g])))
    }
}

impl FiniteGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) || !n.contains(0) {
            return Err(Error::NotNormal);
        }
        let unset = usize::MAX;
        let mut projection = alloc::vec![unset; self.order()];
        let mut reps = Vec::new();
        let members: Vec<usize> = n.elements().collect();
        for g in 0..self.order() {
            if projection[g] != unset {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in &members {
                projection[self.mul(x, g)] = id;
            }
        }
        let m = reps.len();
        let mut table = alloc::vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = projection[self.mul(a, b)] as u16;
            }
        }
        Ok(Quotient { group: FiniteGroup::from_raw_table(m, table), projection, reps })
    }
}

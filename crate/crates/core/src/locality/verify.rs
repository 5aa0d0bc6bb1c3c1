use super::{Locality, NO};
use crate::fusion::NONE;
use crate::group::p_part;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A failed locality axiom with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Words of length four are checked exhaustively when `size^4` is at most this.
    pub exhaustive_budget: usize,
    /// Otherwise this many length-four words are sampled.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exhaustive_budget: 1 << 20, samples: 50_000, seed: 0x5eed }
    }
}

fn fail(axiom: &'static str, witness: String) -> Result<(), Violation> {
    Err(Violation { axiom, witness })
}

impl Locality {
    /// Checks the partial group axioms, the compatibility of the stored
    /// conjugation maps with the products, and the locality axioms (L1)-(L3).
    pub fn verify(&self, opts: &VerifyOptions) -> Result<(), Violation> {
        self.verify_shape()?;
        self.verify_objects()?;
        self.verify_domain_rule()?;
        self.verify_inversion_and_identity()?;
        self.verify_s()?;
        self.verify_conjugation()?;
        self.verify_associativity(opts)?;
        self.verify_sylow()?;
        Ok(())
    }

    fn verify_shape(&self) -> Result<(), Violation> {
        let m = self.s.order();
        if self.conj.len() != self.size * m || self.product.len() != self.size * self.size || self.labels.len() != self.size {
            return fail("shape", "table sizes do not match the carrier".into());
        }
        if self.s_ids.len() != m || self.s_ids.iter().any(|&i| i as usize >= self.size) {
            return fail("shape", "S is not inside the carrier".into());
        }
        if self.product.iter().any(|&v| v != NO && v as usize >= self.size) || self.inverse.iter().any(|&v| v as usize >= self.size) {
            return fail("shape", "table entry outside the carrier".into());
        }
        if self.conj.iter().any(|&v| v != NONE && v as usize >= m) {
            return fail("shape", "conjugation image outside S".into());
        }
        Ok(())
    }

    /// (L3) and `S_f` an object for every `f`.
    fn verify_objects(&self) -> Result<(), Violation> {
        if !self.delta.contains(self.lattice.whole()) {
            return fail("L3", "S is not an object".into());
        }
        for p in self.delta.iter() {
            if let Some(q) = self.lattice.overgroups_of(p).into_iter().find(|&q| !self.delta.contains(q)) {
                return fail("L3", format!("object P{p} has non-object overgroup P{q}"));
            }
        }
        for f in 0..self.size {
            match self.lattice.index_of_bits(&self.s_f(f)) {
                Some(i) if self.delta.contains(i) => {}
                Some(i) => return fail("L2", format!("S_f for f={f} is P{i}, not an object")),
                None => return fail("L2", format!("S_f for f={f} is not a subgroup")),
            }
            for p in self.delta.iter() {
                if let Some(q) = self.conjugate_subgroup(p, f) {
                    if !self.delta.contains(q) {
                        return fail("L3", format!("P{p}^f = P{q} is not an object (f={f})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// (L2) on pairs: the binary product is defined exactly when `S_(f,g)` is an object.
    fn verify_domain_rule(&self) -> Result<(), Violation> {
        for f in 0..self.size {
            for g in 0..self.size {
                let want = self.in_domain(&[f, g]);
                let have = self.product2(f, g).is_some();
                if want != have {
                    let what = if want { "missing" } else { "defined outside the domain" };
                    return fail("L2", format!("product ({f}, {g}) {what}"));
                }
            }
        }
        Ok(())
    }

    fn verify_inversion_and_identity(&self) -> Result<(), Violation> {
        if self.inv(0) != 0 || self.s_id(0) != 0 {
            return fail("identity", "identity is not element 0".into());
        }
        for f in 0..self.size {
            if self.inv(self.inv(f)) != f {
                return fail("inversion", format!("inversion is not an involution at f={f}"));
            }
            if self.product2(0, f) != Some(f) || self.product2(f, 0) != Some(f) {
                return fail("identity", format!("1 is not neutral for f={f}"));
            }
            if self.product2(self.inv(f), f) != Some(0) {
                return fail("inversion", format!("f^-1 f is not 1 for f={f}"));
            }
        }
        Ok(())
    }

    fn verify_s(&self) -> Result<(), Violation> {
        let m = self.s.order();
        for x in 0..m {
            let c = self.conj_map(self.s_id(x));
            for (y, &cy) in c.iter().enumerate() {
                if cy as usize != self.s.conj(y, x) {
                    return fail("S", format!("c_s is not conjugation in S for s={x}"));
                }
                if self.product2(self.s_id(x), self.s_id(y)) != Some(self.s_id(self.s.mul(x, y))) {
                    return fail("S", format!("product of S-elements {x}, {y} disagrees with S"));
                }
            }
        }
        Ok(())
    }

    /// `c_f(s)` equals `Pi(f^-1, s, f)` computed from binary products.
    fn verify_conjugation(&self) -> Result<(), Violation> {
        for f in 0..self.size {
            let c = self.conj_map(f);
            for (x, &cx) in c.iter().enumerate() {
                if cx == NONE {
                    continue;
                }
                let via = self.fold(&[self.inv(f), self.s_id(x), f]);
                if via != Some(self.s_id(cx as usize)) {
                    return fail("conjugation", format!("c_f(s) disagrees with f^-1 s f for f={f}, s={x}"));
                }
            }
        }
        Ok(())
    }

    fn check_word(&self, w: &[usize]) -> Result<(), Violation> {
        if !self.in_domain(w) {
            return Ok(());
        }
        let left = self.fold(w);
        let right = w.iter().rev().try_fold(0usize, |acc, &f| self.product2(f, acc));
        if left.is_none() || left != right {
            return fail("associativity", format!("word {w:?}: left fold {left:?}, right fold {right:?}"));
        }
        if w.len() == 4 {
            let mid = self.product2(w[0], w[1]).zip(self.product2(w[2], w[3])).and_then(|(a, b)| self.product2(a, b));
            if mid != left {
                return fail("associativity", format!("word {w:?}: (ab)(cd) = {mid:?}, left fold {left:?}"));
            }
        }
        Ok(())
    }

    fn verify_associativity(&self, opts: &VerifyOptions) -> Result<(), Violation> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                if self.product2(a, b).is_none() {
                    continue;
                }
                for c in 0..n {
                    self.check_word(&[a, b, c])?;
                }
            }
        }
        let exhaustive = n.checked_pow(4).is_some_and(|k| k <= opts.exhaustive_budget);
        if exhaustive {
            for a in 0..n {
                for b in 0..n {
                    if !self.in_domain(&[a, b]) {
                        continue;
                    }
                    for c in 0..n {
                        if !self.in_domain(&[a, b, c]) {
                            continue;
                        }
                        for d in 0..n {
                            self.check_word(&[a, b, c, d])?;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.samples {
                // Grow a word letter by letter inside the domain.
                let mut w: Vec<usize> = Vec::with_capacity(4);
                while w.len() < 4 {
                    let f = rng.random_range(0..n);
                    w.push(f);
                    if !self.in_domain(&w) {
                        w.pop();
                    }
                }
                self.check_word(&w)?;
            }
        }
        Ok(())
    }

    /// (L1): `S` is a maximal p-subgroup, checked as `S in Syl_p(N_L(S))`.
    fn verify_sylow(&self) -> Result<(), Violation> {
        let whole = self.lattice.whole();
        let lg = match self.normalizer_group(whole) {
            Ok(lg) => lg,
            Err(e) => return fail("L1", format!("N_L(S) is not a group: {e}")),
        };
        if p_part(lg.group.order(), self.p) != self.s.order() {
            let sset = self.local_subgroup_of_s(&lg, whole);
            let w = (0..lg.group.order()).find(|&i| !sset.contains(i) && crate::group::is_power_of(lg.group.element_order(i), self.p)).map(|i| lg.ids[i]);
            return fail("L1", format!("S is not Sylow in N_L(S); p-element outside S: {w:?}"));
        }
        Ok(())
    }
}

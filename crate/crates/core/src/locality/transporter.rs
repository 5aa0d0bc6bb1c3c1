use super::Locality;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A morphism `(f, P, Q)` with `P <= S_f` and `P^f <= Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TMorphism {
    pub f: usize,
    pub src: usize,
    pub dst: usize,
}

/// The transporter category `T_Delta(L)`. Objects are lattice indices;
/// `aut_orders[i]` is `|Aut(objects[i])| = |N_L(objects[i])|`.
#[derive(Clone, Debug)]
pub struct TransporterCategory {
    pub objects: Vec<usize>,
    pub morphisms: Vec<TMorphism>,
    pub aut_orders: Vec<usize>,
}

impl Locality {
    pub fn transporter_category(&self) -> TransporterCategory {
        let objects = self.objects();
        let mut morphisms = Vec::new();
        for &p in &objects {
            for f in 0..self.size {
                if let Some(pf) = self.conjugate_subgroup(p, f) {
                    for &q in &objects {
                        if self.lattice.is_sub(pf, q) {
                            morphisms.push(TMorphism { f, src: p, dst: q });
                        }
                    }
                }
            }
        }
        morphisms.sort_by_key(|m| (m.src, m.dst, m.f));
        let aut_orders = objects.iter().map(|&p| self.normalizer_ids(p).len()).collect();
        TransporterCategory { objects, morphisms, aut_orders }
    }
}

impl TransporterCategory {
    pub fn hom(&self, p: usize, q: usize) -> impl Iterator<Item = &TMorphism> + '_ {
        self.morphisms.iter().filter(move |m| m.src == p && m.dst == q)
    }

    /// Checks composition, identities, `Aut(P) = N_L(P)`, the image of the
    /// inclusion functor from `S`, and that the kernel of `Aut(P) -> Aut(P)`
    /// (restriction of conjugation) is `C_L(P)`.
    pub fn verify(&self, l: &Locality) -> Result<(), String> {
        let set: BTreeSet<TMorphism> = self.morphisms.iter().copied().collect();
        for &p in &self.objects {
            if !set.contains(&TMorphism { f: 0, src: p, dst: p }) {
                return Err(format!("identity of P{p} missing"));
            }
            let auts: BTreeSet<usize> = self.hom(p, p).map(|m| m.f).collect();
            let n: BTreeSet<usize> = l.normalizer_ids(p).into_iter().collect();
            if auts != n {
                return Err(format!("Aut(P{p}) differs from N_L(P{p})"));
            }
            let c: BTreeSet<usize> = l.centralizer_ids(p).into_iter().collect();
            let elems = &l.lattice.get(p).elems;
            let kernel: BTreeSet<usize> = auts.iter().copied().filter(|&f| elems.iter().all(|&x| l.conj_map(f)[x] as usize == x)).collect();
            if kernel != c {
                return Err(format!("kernel on P{p} differs from C_L(P{p})"));
            }
            for &q in &self.objects {
                for x in 0..l.s.order() {
                    let inc = l.conjugate_subgroup(p, l.s_id(x)).is_some_and(|px| l.lattice.is_sub(px, q));
                    if inc && !set.contains(&TMorphism { f: l.s_id(x), src: p, dst: q }) {
                        return Err(format!("S-morphism ({x}, P{p}, P{q}) missing"));
                    }
                }
            }
        }
        let mut by_src: alloc::collections::BTreeMap<usize, Vec<TMorphism>> = alloc::collections::BTreeMap::new();
        for m in &self.morphisms {
            by_src.entry(m.src).or_default().push(*m);
        }
        for a in &self.morphisms {
            for b in by_src.get(&a.dst).into_iter().flatten() {
                let Some(fg) = l.product2(a.f, b.f) else {
                    return Err(format!("composite of {a:?} and {b:?} undefined"));
                };
                if !set.contains(&TMorphism { f: fg, src: a.src, dst: b.dst }) {
                    return Err(format!("composite of {a:?} and {b:?} is not a morphism"));
                }
            }
        }
        Ok(())
    }
}

use super::{run_fusion_checks, run_locality_checks, theta_case, CheckResult, Instance, Status};
use crate::constructions::{theta_quotient, DeltaSets};
use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::locality::{Locality, NO};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A deliberately corrupted structure and the verifier's verdict on it.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub label: String,
    pub results: Vec<CheckResult>,
}

impl Mutant {
    /// Some check failed with a witness.
    pub fn detected(&self) -> bool {
        self.results.iter().any(|r| matches!(&r.status, Status::Fail { witness } if !witness.is_empty()))
    }
}

fn rng_for(inst: &Instance, seed: u64) -> ChaCha8Rng {
    let h = inst.subject().bytes().fold(seed, |h, b| h.rotate_left(7) ^ u64::from(b));
    ChaCha8Rng::seed_from_u64(h)
}

/// Copies of `F_S(G)` with one morphism deleted.
pub fn fusion_mutants(inst: &Instance, count: usize, seed: u64) -> Vec<Mutant> {
    let f = &inst.setting.fusion;
    let candidates: Vec<(usize, usize)> = (0..f.lattice().len()).flat_map(|p| (0..f.homs_from(p).len()).map(move |i| (p, i))).collect();
    let mut rng = rng_for(inst, seed);
    (0..count)
        .map(|k| {
            let (p, i) = candidates[rng.random_range(0..candidates.len())];
            let mut homs: Vec<Vec<_>> = (0..f.lattice().len()).map(|q| f.homs_from(q).to_vec()).collect();
            homs[p].remove(i);
            let mutant = FusionSystem::from_parts_unchecked(f.prime(), f.s().clone(), homs);
            let label = format!("{}#fusion{k}", inst.subject());
            let results = run_fusion_checks(&label, &inst.setting, &mutant);
            Mutant { label, results }
        })
        .collect()
}

/// Copies of `L_{Delta*}(G)/Theta` with one defined product removed.
pub fn locality_mutants(inst: &Instance, count: usize, seed: u64) -> Result<Vec<Mutant>> {
    let setting = &inst.setting;
    let sets = DeltaSets::new(setting);
    let t = theta_quotient(setting, &sets)?;
    let base = theta_case(&inst.subject(), setting, &t);
    let parts = base.locality.clone().into_parts();
    let defined: Vec<usize> = (0..parts.product.len()).filter(|&i| parts.product[i] != NO).collect();
    let mut rng = rng_for(inst, seed);
    Ok((0..count)
        .map(|k| {
            let mut p = parts.clone();
            p.product[defined[rng.random_range(0..defined.len())]] = NO;
            let mut case = base.clone();
            case.locality = Locality::from_parts(p);
            case.subject = format!("{}#locality{k}", inst.subject());
            Mutant { label: case.subject.clone(), results: run_locality_checks(&case, setting, true) }
        })
        .collect())
}

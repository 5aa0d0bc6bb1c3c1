//! Built-in permutation presentations of the test corpus.

use crate::error::Result;
use crate::group::{perm_from_cycles, prime_divisors, FiniteGroup};
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub degree: usize,
    /// Generators as disjoint cycles on 1-based points.
    pub generators: Vec<Vec<Vec<usize>>>,
}

pub const BUILTIN_NAMES: [&str; 10] = ["C1", "S3", "A4", "S4", "A5", "D8", "Q8", "SL(2,3)", "C2xA5", "C2xS4"];

impl Preset {
    pub fn build(&self, bound: usize) -> Result<FiniteGroup> {
        let gens = self.generators.iter().map(|cycles| perm_from_cycles(self.degree, cycles)).collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutations(self.degree, &gens, bound)
    }
}

/// Primes at which a corpus group is examined: every prime divisor of the
/// order, or 2 for the trivial group.
pub fn corpus_primes(g: &FiniteGroup) -> Vec<u64> {
    let ps = prime_divisors(g.order());
    if ps.is_empty() {
        alloc::vec![2]
    } else {
        ps
    }
}

fn c(cycles: &[&[usize]]) -> Vec<Vec<usize>> {
    cycles.iter().map(|c| c.to_vec()).collect()
}

/// Points are the nonzero row vectors of F_3^2, numbered 1..=8; a matrix acts by
/// right multiplication.
fn f3_matrix_cycles(m: [[u8; 2]; 2]) -> Vec<Vec<usize>> {
    let vecs: Vec<(u8, u8)> = (0..9u8).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let point = |v: (u8, u8)| vecs.iter().position(|&w| w == v).expect("nonzero vector") + 1;
    let mut seen = [false; 8];
    let mut out = Vec::new();
    for start in 0..8 {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x + 1);
            let (a, b) = vecs[x];
            let img = ((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3);
            x = point(img) - 1;
        }
        if cyc.len() > 1 {
            out.push(cyc);
        }
    }
    out
}

pub fn builtin(name: &str) -> Option<Preset> {
    let norm: alloc::string::String = name.chars().filter(|c| !matches!(c, '(' | ')' | ',' | ' ' | '_')).flat_map(|c| c.to_uppercase()).collect();
    let (name, degree, generators) = match norm.as_str() {
        "C1" => ("C1", 1, Vec::new()),
        "S3" => ("S3", 3, alloc::vec![c(&[&[1, 2, 3]]), c(&[&[1, 2]])]),
        "A4" => ("A4", 4, alloc::vec![c(&[&[1, 2, 3]]), c(&[&[1, 2], &[3, 4]])]),
        "S4" => ("S4", 4, alloc::vec![c(&[&[1, 2, 3, 4]]), c(&[&[1, 2]])]),
        "A5" => ("A5", 5, alloc::vec![c(&[&[1, 2, 3, 4, 5]]), c(&[&[1, 2, 3]])]),
        "D8" => ("D8", 4, alloc::vec![c(&[&[1, 2, 3, 4]]), c(&[&[1, 3]])]),
        "Q8" => ("Q8", 8, alloc::vec![f3_matrix_cycles([[0, 2], [1, 0]]), f3_matrix_cycles([[1, 1], [1, 2]])]),
        "SL23" => ("SL(2,3)", 8, alloc::vec![f3_matrix_cycles([[1, 1], [0, 1]]), f3_matrix_cycles([[1, 0], [1, 1]])]),
        "C2XA5" => ("C2xA5", 7, alloc::vec![c(&[&[1, 2, 3, 4, 5]]), c(&[&[1, 2, 3]]), c(&[&[6, 7]])]),
        "C2XS4" => ("C2xS4", 6, alloc::vec![c(&[&[1, 2, 3, 4]]), c(&[&[1, 2]]), c(&[&[5, 6]])]),
        _ => return None,
    };
    Some(Preset { name, degree, generators })
}

//! Element and subgroup labels.

use fusionloc_core::group::{FiniteGroup, Subgroup};

/// Cycle notation for permutation groups, `g<index>` otherwise.
pub fn element(g: &FiniteGroup, x: usize) -> String {
    match g.cycles_of(x) {
        Some(cycles) if cycles.is_empty() => "()".into(),
        Some(cycles) => cycles.iter().map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))).collect(),
        None => format!("g{x}"),
    }
}

pub fn subgroup_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<String> {
    g.generators_of(h).into_iter().map(|x| element(g, x)).collect()
}

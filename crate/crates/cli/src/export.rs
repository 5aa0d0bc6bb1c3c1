//! Serialized localities and transporter categories.

use crate::render::{element, subgroup_generators};
use fusionloc_core::bitset::BitSet;
use fusionloc_core::group::{FiniteGroup, Subgroup};
use fusionloc_core::locality::{Locality, TransporterCategory};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Serialize)]
pub struct ObjectRecord {
    pub index: usize,
    pub order: usize,
    pub class: usize,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct LocalityRecord {
    pub name: String,
    pub prime: u64,
    pub size: usize,
    /// Element labels in `G`, by carrier id.
    pub labels: Vec<String>,
    pub inverse: Vec<usize>,
    /// Carrier ids of the elements of `S`.
    pub s: Vec<usize>,
    pub objects: Vec<ObjectRecord>,
    /// Minimal objects; `Delta` is their closure under overgroups.
    pub delta_generators: Vec<usize>,
    /// `[f, g, fg]` for every composable pair.
    pub products: Vec<[usize; 3]>,
}

#[derive(Serialize)]
pub struct MorphismRecord {
    pub f: usize,
    pub src: usize,
    pub dst: usize,
}

#[derive(Serialize)]
pub struct TransporterRecord {
    pub objects: Vec<ObjectRecord>,
    pub morphisms: Vec<MorphismRecord>,
    pub aut_orders: BTreeMap<String, usize>,
}

/// Objects of `l` as subgroups of `g`, via the `G`-labels of the carrier.
pub fn object_in_group(l: &Locality, g: &FiniteGroup, p: usize) -> Subgroup {
    Subgroup::from_bits_unchecked(BitSet::from_iter(g.order(), l.lattice().get(p).elems.iter().map(|&x| l.label(l.s_id(x)))))
}

/// Class id of each object under conjugation in `l`, numbered by first
/// appearance in lattice order.
pub fn object_classes(l: &Locality) -> BTreeMap<usize, usize> {
    let objects = l.objects();
    let mut class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0;
    for &p in &objects {
        if class.contains_key(&p) {
            continue;
        }
        for f in 0..l.size() {
            if let Some(q) = l.conjugate_subgroup(p, f) {
                class.entry(q).or_insert(next);
            }
        }
        next += 1;
    }
    class
}

fn object_records(l: &Locality, g: &FiniteGroup) -> Vec<ObjectRecord> {
    let classes = object_classes(l);
    l.objects()
        .into_iter()
        .map(|p| ObjectRecord { index: p, order: l.lattice().order(p), class: classes[&p], generators: subgroup_generators(g, &object_in_group(l, g, p)) })
        .collect()
}

pub fn locality_record(name: &str, l: &Locality, g: &FiniteGroup) -> LocalityRecord {
    let n = l.size();
    let delta_generators = l.objects().into_iter().filter(|&p| !l.lattice().get(p).maximal.iter().any(|&q| l.is_object(q))).collect();
    let products = (0..n).flat_map(|a| (0..n).filter_map(move |b| l.product2(a, b).map(|c| [a, b, c]))).collect();
    LocalityRecord {
        name: name.to_string(),
        prime: l.prime(),
        size: n,
        labels: (0..n).map(|f| element(g, l.label(f))).collect(),
        inverse: (0..n).map(|f| l.inv(f)).collect(),
        s: (0..l.s().order()).map(|x| l.s_id(x)).collect(),
        objects: object_records(l, g),
        delta_generators,
        products,
    }
}

pub fn transporter_record(l: &Locality, t: &TransporterCategory, g: &FiniteGroup) -> TransporterRecord {
    TransporterRecord {
        objects: object_records(l, g),
        morphisms: t.morphisms.iter().map(|m| MorphismRecord { f: m.f, src: m.src, dst: m.dst }).collect(),
        aut_orders: t.objects.iter().zip(&t.aut_orders).map(|(p, &k)| (format!("P{p}"), k)).collect(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per object, clustered by conjugacy class, and one edge per
/// morphism `(f, P, Q)` or, when `collapse` is set, one edge per pair of
/// objects labelled with the number of morphisms.
pub fn transporter_dot(l: &Locality, t: &TransporterCategory, g: &FiniteGroup, collapse: bool) -> String {
    let records = object_records(l, g);
    let mut out = String::from("digraph transporter {\n  node [shape=box];\n");
    let classes: std::collections::BTreeSet<usize> = records.iter().map(|r| r.class).collect();
    for c in classes {
        writeln!(out, "  subgraph cluster_{c} {{\n    label=\"class {c}\";").unwrap();
        for r in records.iter().filter(|r| r.class == c) {
            let label = format!("P{} order {}\\n{}", r.index, r.order, dot_escape(&r.generators.join(", ")));
            writeln!(out, "    P{} [label=\"{label}\"];", r.index).unwrap();
        }
        out.push_str("  }\n");
    }
    if collapse {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for m in &t.morphisms {
            *counts.entry((m.src, m.dst)).or_default() += 1;
        }
        for ((a, b), k) in counts {
            writeln!(out, "  P{a} -> P{b} [label=\"{k}\"];").unwrap();
        }
    } else {
        for m in &t.morphisms {
            writeln!(out, "  P{} -> P{} [label=\"{}\"];", m.src, m.dst, m.f).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

//! Per-subgroup classification of `F_S(G)`.

use crate::render::subgroup_generators;
use fusionloc_core::constructions::{DeltaSets, Setting};
use fusionloc_core::group::report_order;
use serde::Serialize;
use std::fmt::Write;

#[derive(Serialize)]
pub struct Flags {
    pub centric: bool,
    pub radical: bool,
    pub centric_radical: bool,
    pub quasicentric: bool,
    pub subcentric: bool,
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub delta: bool,
    pub delta_star: bool,
}

#[derive(Serialize)]
pub struct SubgroupRecord {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub class: usize,
    pub flags: Flags,
}

#[derive(Serialize)]
pub struct ClassRecord {
    pub id: usize,
    pub order: usize,
    pub size: usize,
    pub members: Vec<usize>,
}

#[derive(Serialize)]
pub struct Classification {
    pub group: String,
    pub group_order: usize,
    pub prime: u64,
    pub sylow_order: usize,
    pub characteristic_p_type: bool,
    pub subgroups: Vec<SubgroupRecord>,
    pub classes: Vec<ClassRecord>,
}

pub fn classify(name: &str, setting: &Setting) -> Classification {
    let f = &setting.fusion;
    let sets = DeltaSets::new(setting);
    let classes = f.classes();
    let mut class_of = vec![0; f.lattice().len()];
    for (id, c) in classes.iter().enumerate() {
        for &q in c {
            class_of[q] = id;
        }
    }
    let mut order: Vec<usize> = (0..f.lattice().len()).collect();
    let subs: Vec<_> = order.iter().map(|&i| setting.in_group(i)).collect();
    order.sort_by(|&a, &b| report_order(&subs[a], &subs[b]));
    let subgroups = order
        .into_iter()
        .map(|i| {
            let centric = f.is_centric(i);
            let radical = f.is_radical(i);
            SubgroupRecord {
                index: i,
                order: f.order_of(i),
                generators: subgroup_generators(&setting.group, &subs[i]),
                class: class_of[i],
                flags: Flags {
                    centric,
                    radical,
                    centric_radical: centric && radical,
                    quasicentric: sets.quasicentric.contains(i),
                    subcentric: sets.subcentric.contains(i),
                    fully_normalized: f.is_fully_normalized(i),
                    fully_centralized: f.is_fully_centralized(i),
                    delta: sets.delta.contains(i),
                    delta_star: sets.delta_star.contains(i),
                },
            }
        })
        .collect();
    let classes =
        classes.into_iter().enumerate().map(|(id, members)| ClassRecord { id, order: f.order_of(members[0]), size: members.len(), members }).collect();
    Classification {
        group: name.to_string(),
        group_order: setting.group.order(),
        prime: setting.p,
        sylow_order: f.s().order(),
        characteristic_p_type: setting.is_characteristic_p_type(),
        subgroups,
        classes,
    }
}

const FLAG_NAMES: [&str; 9] = ["cr", "c", "q", "s", "fn", "fc", "D", "D*", "rad"];

fn flag_marks(f: &Flags) -> String {
    let on = [f.centric_radical, f.centric, f.quasicentric, f.subcentric, f.fully_normalized, f.fully_centralized, f.delta, f.delta_star, f.radical];
    FLAG_NAMES.iter().zip(on).filter(|(_, b)| *b).map(|(n, _)| *n).collect::<Vec<_>>().join(" ")
}

pub fn table(c: &Classification) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} at p={}: |G| = {}, |S| = {}, {} subgroups of S in {} classes, characteristic p-type: {}",
        c.group,
        c.prime,
        c.group_order,
        c.sylow_order,
        c.subgroups.len(),
        c.classes.len(),
        c.characteristic_p_type
    )
    .unwrap();
    writeln!(
        out,
        "flags: cr centric radical, c centric, q quasicentric, s subcentric, fn/fc fully normalized/centralized, D in Delta, D* in Delta*, rad radical"
    )
    .unwrap();
    writeln!(out, "{:>5}  {:>5}  {:>5}  {:28}  generators", "index", "order", "class", "flags").unwrap();
    for s in &c.subgroups {
        let line = format!("{:>5}  {:>5}  {:>5}  {:28}  {}", s.index, s.order, s.class, flag_marks(&s.flags), s.generators.join(", "));
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}

//! Group files, builtin presets and corpus manifests.

use anyhow::{bail, Context, Result};
use fusionloc_core::corpus::{builtin, corpus_primes, BUILTIN_NAMES};
use fusionloc_core::group::{perm_from_cycles, FiniteGroup, DEFAULT_ORDER_BOUND};
use fusionloc_core::verifier::Instance;
use serde::Deserialize;
use std::path::{Path, PathBuf};

pub const ORDER_BOUND_VAR: &str = "FUSIONLOC_ORDER_BOUND";

/// The group order bound, from `FUSIONLOC_ORDER_BOUND` if set.
pub fn order_bound() -> Result<usize> {
    match std::env::var(ORDER_BOUND_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{ORDER_BOUND_VAR}={v:?} is not a positive integer")),
        Err(_) => Ok(DEFAULT_ORDER_BOUND),
    }
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GroupFile {
    Perms { name: String, degree: usize, generators: Vec<Vec<Vec<usize>>> },
    Table { name: String, table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn load_builtin(name: &str, bound: usize) -> Result<NamedGroup> {
    let Some(preset) = builtin(name) else {
        bail!("unknown builtin group {name:?}; known: {}", BUILTIN_NAMES.join(", "));
    };
    let group = preset.build(bound)?;
    Ok(NamedGroup { name: preset.name.to_string(), group })
}

/// Reads `{name, degree, generators}` with generators as lists of 1-based
/// cycles, or `{name, table}` with a row-major multiplication table.
pub fn load_file(path: &Path, bound: usize) -> Result<NamedGroup> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_group(&text, bound).with_context(|| format!("in {}", path.display()))
}

pub fn parse_group(text: &str, bound: usize) -> Result<NamedGroup> {
    let file: GroupFile = serde_json::from_str(text).context("expected {name, degree, generators} or {name, table}")?;
    Ok(match file {
        GroupFile::Perms { name, degree, generators } => {
            if degree == 0 {
                bail!("degree must be positive");
            }
            let gens = generators.iter().map(|c| perm_from_cycles(degree, c)).collect::<fusionloc_core::Result<Vec<_>>>()?;
            NamedGroup { name, group: FiniteGroup::from_permutations(degree, &gens, bound)? }
        }
        GroupFile::Table { name, table } => NamedGroup { name, group: FiniteGroup::from_table(&table, bound)? },
    })
}

/// Where a corpus entry's group comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// Defaults to the name of the loaded group.
    pub name: Option<String>,
    pub source: Source,
    pub prime: Option<u64>,
    pub notes: String,
    pub allow_nondividing: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestEntry {
    name: Option<String>,
    builtin: Option<String>,
    file: Option<PathBuf>,
    prime: Option<u64>,
    #[serde(default)]
    notes: String,
    #[serde(default)]
    allow_nondividing: bool,
}

/// A JSON list of `{name?, builtin | file, prime?, notes?, allow_nondividing?}`.
/// Relative file paths resolve against the manifest's directory.
pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: Vec<ManifestEntry> = serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    raw.into_iter()
        .enumerate()
        .map(|(i, e)| {
            let source = match (e.builtin, e.file) {
                (Some(b), None) => Source::Builtin(b),
                (None, Some(f)) => Source::File(base.join(f)),
                _ => bail!("manifest entry {i}: give exactly one of builtin and file"),
            };
            Ok(CorpusEntry { name: e.name, source, prime: e.prime, notes: e.notes, allow_nondividing: e.allow_nondividing })
        })
        .collect()
}

/// The registered corpus: every builtin at every prime dividing its order.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    BUILTIN_NAMES
        .iter()
        .map(|n| CorpusEntry { name: None, source: Source::Builtin(n.to_string()), prime: None, notes: String::new(), allow_nondividing: false })
        .collect()
}

pub fn load_source(source: &Source, bound: usize) -> Result<NamedGroup> {
    match source {
        Source::Builtin(b) => load_builtin(b, bound),
        Source::File(f) => load_file(f, bound),
    }
}

/// The primes to examine: the given one (which must divide the order unless
/// allowed), or every prime divisor.
pub fn primes_for(group: &FiniteGroup, prime: Option<u64>, allow_nondividing: bool) -> Result<Vec<u64>> {
    match prime {
        None => Ok(corpus_primes(group)),
        Some(p) => {
            if !fusionloc_core::group::is_prime(p) {
                bail!("{p} is not prime");
            }
            if !allow_nondividing && group.order() > 1 && !group.order().is_multiple_of(p as usize) {
                bail!("{p} does not divide the group order {}", group.order());
            }
            Ok(vec![p])
        }
    }
}

pub fn instances(entries: &[CorpusEntry], bound: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for e in entries {
        let g = load_source(&e.source, bound).with_context(|| format!("corpus entry {:?}", e.source))?;
        let name = e.name.as_ref().unwrap_or(&g.name);
        for p in primes_for(&g.group, e.prime, e.allow_nondividing).with_context(|| format!("corpus entry {name}"))? {
            out.push(Instance::new(name.clone(), g.group.clone(), p)?);
        }
    }
    Ok(out)
}

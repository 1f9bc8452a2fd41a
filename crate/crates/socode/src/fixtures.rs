//! The built-in graph catalog.

use std::sync::OnceLock;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use socode_core::graphs::{
    bipartite_double, doubled_odd_graph, hadamard_graph, paley_hadamard, parse_graph6, Graph, IntersectionArray,
};

const MANIFEST: &str = include_str!("../data/manifest.json");

fn graph6_data(file: &str) -> Option<&'static str> {
    Some(match file {
        "doro.g6" => include_str!("../data/doro.g6"),
        "foster.g6" => include_str!("../data/foster.g6"),
        "gewirtz.g6" => include_str!("../data/gewirtz.g6"),
        "gh33.g6" => include_str!("../data/gh33.g6"),
        "higman_sims.g6" => include_str!("../data/higman_sims.g6"),
        _ => return None,
    })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Graph6(String),
    Hadamard(usize),
    Double(String),
    DoubledOdd(usize),
}

#[derive(Clone, Debug, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub description: String,
    pub source: Source,
    pub array: String,
}

pub fn manifest() -> &'static [FixtureEntry] {
    static CELL: OnceLock<Vec<FixtureEntry>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(MANIFEST).expect("bundled manifest is valid JSON"))
}

pub fn fixture_names() -> Vec<&'static str> {
    manifest().iter().map(|e| e.name.as_str()).collect()
}

pub fn entry(name: &str) -> Result<&'static FixtureEntry> {
    manifest()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| anyhow!("unknown fixture {name:?} (known: {})", fixture_names().join(", ")))
}

fn build(source: &Source) -> Result<Graph> {
    Ok(match source {
        Source::Graph6(file) => {
            let text = graph6_data(file).ok_or_else(|| anyhow!("no bundled graph6 file {file}"))?;
            parse_graph6(text).with_context(|| format!("decoding {file}"))?
        }
        Source::Hadamard(q) => hadamard_graph(&paley_hadamard(*q)?),
        Source::Double(base) => bipartite_double(&load_graph(base)?),
        Source::DoubledOdd(k) => doubled_odd_graph(*k)?,
    })
}

/// The graph without the intersection-array gate.
pub fn load_graph(name: &str) -> Result<Graph> {
    build(&entry(name)?.source)
}

/// The graph together with its verified intersection array. Loading fails if
/// the graph does not have the array recorded in the manifest.
pub fn load_fixture(name: &str) -> Result<(Graph, IntersectionArray)> {
    let e = entry(name)?;
    let g = build(&e.source)?;
    let expected: IntersectionArray = e.array.parse().with_context(|| format!("manifest array for {name}"))?;
    let ds = socode_core::graphs::distance_matrices(&g)?;
    let found = socode_core::graphs::verify_distance_regular(&ds)
        .map_err(|w| anyhow!("fixture {name} is not distance-regular: {w}"))?;
    if found != expected {
        bail!("fixture {name} has intersection array {found}, manifest says {expected}");
    }
    Ok((g, found))
}

//! Text formats: graph files, generator files, partition files and code export.
//!
//! Generator files hold one permutation per line, either in cycle notation
//! `(0 1 2)(3 4)` or as an image list `[1, 0, 3, 2]`. Partition files hold one
//! cell per line as whitespace-separated vertices. In both, blank lines and
//! lines starting with `#` are ignored, and vertices are 0-based.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use socode_core::algebra::Mat;
use socode_core::graphs::{
    complete_graph, cycle_graph, doubled_odd_graph, hadamard_graph, paley_hadamard, parse_edge_list, parse_graph6,
    Graph,
};
use socode_core::groups::{parse_perm, Perm};
use socode_core::partitions::Partition;

use crate::fixtures;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Reads a graph file: graph6 when the first content line looks like one,
/// otherwise an edge list of `u v` pairs.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_text(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    let graph6 = first.starts_with(">>graph6<<")
        || (!first.contains(char::is_whitespace) && first.bytes().all(|b| (63..=126).contains(&b)));
    Ok(if graph6 { parse_graph6(first)? } else { parse_edge_list(text)? })
}

/// A fixture name, a construction `name:arg`, or a path to a graph file.
pub fn resolve_graph(source: &str) -> Result<(String, Graph)> {
    if fixtures::entry(source).is_ok() {
        let (g, _) = fixtures::load_fixture(source)?;
        return Ok((source.to_string(), g));
    }
    if let Some((kind, arg)) = source.split_once(':') {
        if !Path::new(source).exists() {
            let n: usize = arg.parse().with_context(|| format!("argument of {kind}"))?;
            let g = match kind {
                "cycle" => cycle_graph(n),
                "complete" => complete_graph(n),
                "doubled-odd" => doubled_odd_graph(n)?,
                "paley-hadamard" => hadamard_graph(&paley_hadamard(n)?),
                _ => bail!("unknown construction {kind:?} (cycle, complete, doubled-odd, paley-hadamard)"),
            };
            return Ok((source.to_string(), g));
        }
    }
    let path = Path::new(source);
    if !path.exists() {
        bail!("{source:?} is neither a fixture ({}) nor a readable file", fixtures::fixture_names().join(", "));
    }
    let name = path.file_stem().map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, read_graph(path)?))
}

pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Perm>> {
    content_lines(text)
        .map(|(line, l)| parse_perm(l, degree).with_context(|| format!("line {line}")))
        .collect()
}

pub fn read_generators(path: &Path, degree: usize) -> Result<Vec<Perm>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_generators(&text, degree).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_generators(gens: &[Perm]) -> String {
    gens.iter().map(|p| format!("{p}\n")).collect()
}

pub fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    let mut cells = Vec::new();
    for (line, l) in content_lines(text) {
        let cell = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().with_context(|| format!("line {line}: bad vertex {t:?}")))
            .collect::<Result<Vec<_>>>()?;
        cells.push(cell);
    }
    Ok(Partition::new(n, cells)?)
}

pub fn read_partition(path: &Path, n: usize) -> Result<Partition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_partition(&text, n).with_context(|| format!("parsing {}", path.display()))
}

/// One row of digits per generator row; entries at least 10 are comma-separated.
pub fn generator_text(m: &Mat) -> String {
    let wide = m.modulus() > 10;
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
        out.push_str(&row.join(if wide { "," } else { "" }));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text_detection() {
        let k3 = parse_graph_text("Bw\n").unwrap();
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));
        let path = parse_graph_text("# path\n0 1\n1 2\n").unwrap();
        assert_eq!((path.n(), path.edge_count()), (3, 2));
    }

    #[test]
    fn generator_lines() {
        let gens = parse_generators("# swap\n(0 1)\n\n[0, 2, 1, 3]\n", 4).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].apply(0), 1);
        assert_eq!(gens[1].apply(1), 2);
        let back = parse_generators(&write_generators(&gens), 4).unwrap();
        assert_eq!(back, gens);
        assert!(parse_generators("(0 9)", 4).is_err());
    }

    #[test]
    fn partition_lines() {
        let p = parse_partition("0 1\n2 3\n", 4).unwrap();
        assert!(p.is_uniform());
        assert!(parse_partition("0 1\n1 2 3\n", 4).is_err());
    }

    #[test]
    fn constructions() {
        let (_, g) = resolve_graph("cycle:7").unwrap();
        assert_eq!(g.n(), 7);
        assert!(resolve_graph("wheel:5").is_err());
        assert!(resolve_graph("no-such-thing").is_err());
    }

    #[test]
    fn digits() {
        let m = Mat::from_rows(&[[1, 0, 2], [0, 1, 1]], 3).unwrap();
        assert_eq!(generator_text(&m), "102\n011\n");
    }
}

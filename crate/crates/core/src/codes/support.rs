use alloc::vec;
use alloc::vec::Vec;

use super::kernel::{self, with_kernel, Kernel};
use super::LinearCode;
use crate::bitset::{words_for, BitSet};
use crate::graphs::{srg_parameters, Graph, SrgParameters};
use crate::{Error, Result};

/// Largest code whose codewords are scanned for supports.
pub const SUPPORT_CAP: u128 = 1 << 26;

/// Adjacency rule for support graphs: two supports are adjacent when their
/// intersection size is one of `sizes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportRule {
    pub sizes: Vec<usize>,
}

impl SupportRule {
    pub fn intersection(size: usize) -> Self {
        SupportRule { sizes: vec![size] }
    }

    pub fn accepts(&self, size: usize) -> bool {
        self.sizes.contains(&size)
    }
}

/// Distinct supports of the weight-`w` codewords, sorted.
pub fn weight_supports(c: &LinearCode, w: usize) -> Result<Vec<BitSet>> {
    if c.size() > SUPPORT_CAP {
        return Err(Error::TooLarge { what: "support enumeration", required: c.size(), cap: SUPPORT_CAP });
    }
    let n = c.n();
    if c.k() == 0 || w == 0 || w > n {
        return Err(Error::NoCodewords { weight: w });
    }
    let words = words_for(n);
    let parts = with_kernel!(c.p(), n, |kern| {
        let rows = kern.pack_rows(c.generator());
        kernel::enumerate(kern, &rows, c.k(), Vec::new, |acc: &mut Vec<Vec<u64>>, v| {
            if kern.weight(v) as usize == w {
                let mut bits = vec![0u64; words];
                kern.support_bits(v, &mut bits);
                acc.push(bits);
            }
        })
    });
    let mut all: Vec<Vec<u64>> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    if all.is_empty() {
        return Err(Error::NoCodewords { weight: w });
    }
    Ok(all
        .into_iter()
        .map(|bits| {
            let mut s = BitSet::new(n);
            s.words_mut().copy_from_slice(&bits);
            s
        })
        .collect())
}

/// Graph on the weight-`w` supports with adjacency given by `rule`.
pub fn support_graph(c: &LinearCode, w: usize, rule: &SupportRule) -> Result<Graph> {
    let supports = weight_supports(c, w)?;
    Ok(graph_on(&supports, rule))
}

fn graph_on(supports: &[BitSet], rule: &SupportRule) -> Graph {
    let mut g = Graph::new(supports.len());
    for (a, sa) in supports.iter().enumerate() {
        for (b, sb) in supports.iter().enumerate().skip(a + 1) {
            if rule.accepts(sa.intersection_count(sb)) {
                g.add_edge(a, b).expect("in range");
            }
        }
    }
    g
}

/// Tries every rule `{c}` and `{0, c}` for `0 ≤ c < w` and returns the ones
/// giving a strongly regular graph.
pub fn scan_support_graphs(c: &LinearCode, w: usize) -> Result<Vec<(SupportRule, SrgParameters)>> {
    let supports = weight_supports(c, w)?;
    let mut rules: Vec<SupportRule> = (0..w).map(SupportRule::intersection).collect();
    rules.extend((1..w).map(|s| SupportRule { sizes: vec![0, s] }));
    Ok(rules
        .into_iter()
        .filter_map(|rule| srg_parameters(&graph_on(&supports, &rule)).map(|p| (rule, p)))
        .collect())
}

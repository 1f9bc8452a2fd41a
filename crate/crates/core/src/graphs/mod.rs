//! Simple undirected graphs, the classical distance-regular constructions,
//! distance classes and intersection arrays.

mod construct;
pub(crate) mod distance;
mod graph6;

use alloc::vec::Vec;

pub use construct::{
    bipartite_double, complete_graph, cycle_graph, doubled_odd_graph, hadamard_graph, paley_hadamard,
    path_graph, HadamardMatrix,
};
pub use distance::{
    distance_matrices, verify_distance_regular, DistanceSystem, IntersectionArray, RegularityWitness,
};
pub use graph6::{parse_edge_list, parse_graph6, to_graph6};

use crate::bitset::BitSet;
use crate::{Error, Result};

/// Undirected simple graph stored as adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: (0..n).map(|_| BitSet::new(n)).collect() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and irreflexivity.
    pub fn from_adjacency(rows: Vec<BitSet>) -> Result<Self> {
        let n = rows.len();
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
            }
            if row.contains(u) {
                return Err(Error::InvalidGraph(alloc::format!("loop at vertex {u}")));
            }
            if let Some(v) = row.iter().find(|&v| !rows[v].contains(u)) {
                return Err(Error::InvalidGraph(alloc::format!("adjacency not symmetric at ({u},{v})")));
            }
        }
        Ok(Graph { adj: rows })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfRange { index: u.max(v), bound: n });
        }
        if u == v {
            return Err(Error::InvalidGraph(alloc::format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, BitSet::count);
        self.adj.iter().all(|r| r.count() == k).then_some(k)
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        self.adj.iter().map(|r| r.iter().map(|v| v as u32).collect()).collect()
    }

    /// Two-colouring if one exists (colour of every vertex).
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut colour = alloc::vec![u8::MAX; n];
        let mut stack = Vec::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if colour[v] == u8::MAX {
                        colour[v] = colour[u] ^ 1;
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SrgParameters {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl core::fmt::Display for SrgParameters {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SRG({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Returns the SRG parameters when `g` is strongly regular (neither complete nor edgeless).
pub fn srg_parameters(g: &Graph) -> Option<SrgParameters> {
    let n = g.n();
    let k = g.regular_degree()?;
    if k == 0 || k + 1 == n {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let c = g.row(u).intersection_count(g.row(v));
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParameters { v: n, k, lambda: lambda.unwrap_or(0), mu: mu.unwrap_or(0) })
}

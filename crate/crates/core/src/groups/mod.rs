//! Permutation groups acting on vertex sets: orbits, automorphism search,
//! random elements and small-subgroup sampling.

mod kind;
mod perm;
mod sample;
mod search;

use alloc::vec;
use alloc::vec::Vec;

pub use kind::GroupKind;
pub use perm::{parse_perm, Perm};
pub use sample::{sample_subgroups, ProductReplacement, SampledSubgroup, SubgroupTarget};
pub use search::{find_automorphisms, find_automorphisms_of, AutomorphismGroup, Structure};

use crate::graphs::Graph;
use crate::partitions::Partition;
use crate::{Error, Result};

/// Default cap for element enumeration.
pub const CLOSURE_CAP: usize = 1_000_000;

/// A group given by generators of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    /// An empty generator list is read as the trivial group.
    pub fn new(degree: usize, mut generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: vec![Perm::identity(degree)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn orbits(&self) -> OrbitPartition {
        orbits(self.degree, &self.generators)
    }

    /// All elements, or `None` once more than `cap` are found.
    pub fn elements(&self, cap: usize) -> Option<Vec<Perm>> {
        let mut seen = hashbrown::HashSet::new();
        let id = Perm::identity(self.degree);
        seen.insert(id.clone());
        let mut all = vec![id];
        let mut i = 0;
        while i < all.len() {
            for g in &self.generators {
                let h = all[i].then(g);
                if !seen.contains(&h) {
                    if all.len() >= cap {
                        return None;
                    }
                    seen.insert(h.clone());
                    all.push(h);
                }
            }
            i += 1;
        }
        Some(all)
    }

    /// Order by closure enumeration, `None` above `cap`.
    pub fn order(&self, cap: usize) -> Option<u64> {
        self.elements(cap).map(|e| e.len() as u64)
    }
}

/// Orbits of a group as a partition of the point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPartition {
    cells: Vec<Vec<usize>>,
    uniform: bool,
}

impl OrbitPartition {
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn to_partition(&self) -> Partition {
        let n = self.cells.iter().map(Vec::len).sum();
        Partition::new(n, self.cells.clone()).expect("orbits partition the point set")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
    }

    pub(crate) fn absorb(&mut self, g: &Perm) {
        for v in 0..g.degree() {
            self.union(v, g.apply(v));
        }
    }

    pub(crate) fn class_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r] as usize
    }
}

/// Orbits of `<gens>` on `{0..n-1}`; cells sorted internally and by least element.
pub fn orbits(n: usize, gens: &[Perm]) -> OrbitPartition {
    let mut uf = UnionFind::new(n);
    for g in gens {
        uf.absorb(g);
    }
    let mut index = vec![usize::MAX; n];
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if index[r] == usize::MAX {
            index[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[index[r]].push(v);
    }
    let uniform = cells.windows(2).all(|w| w[0].len() == w[1].len());
    OrbitPartition { cells, uniform }
}

/// Whether `s` preserves adjacency of `g`.
pub fn is_automorphism(g: &Graph, s: &Perm) -> Result<bool> {
    if s.degree() != g.n() {
        return Err(Error::DegreeMismatch { expected: g.n(), found: s.degree() });
    }
    Ok((0..g.n()).all(|u| g.degree(u) == g.degree(s.apply(u)) && g.neighbors(u).all(|v| g.has_edge(s.apply(u), s.apply(v)))))
}

//! Automorphism search by partition refinement and individualization.
//!
//! The search follows the usual scheme: refine the unit partition to an
//! equitable one, individualize a vertex of the first non-singleton cell and
//! repeat until the partition is discrete. The leaf reached first fixes a
//! reference labelling. Every other child of a node on the first path is
//! explored only if it is not already known to be equivalent, and the
//! subtree is searched for a leaf whose labelling differs from the reference
//! by an automorphism. Node traces (a hash of the refinement history) prune
//! subtrees that cannot contain such a leaf.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Perm, UnionFind};
use crate::bitset::BitSet;
use crate::graphs::Graph;

/// Vertex-coloured points with any number of binary relations.
#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    colors: Vec<u32>,
    relations: Vec<Relation>,
}

#[derive(Clone, Debug)]
struct Relation {
    out: Vec<Vec<u32>>,
    /// Reverse arcs; `None` for symmetric relations.
    inn: Option<Vec<Vec<u32>>>,
    rows: Vec<BitSet>,
}

impl Structure {
    pub fn new(n: usize) -> Self {
        Structure { n, colors: vec![0; n], relations: Vec::new() }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Structure::new(g.n()).with_arcs(g.adjacency_lists(), true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Automorphisms must preserve colours.
    pub fn with_colors(mut self, colors: Vec<u32>) -> Self {
        assert_eq!(colors.len(), self.n);
        self.colors = colors;
        self
    }

    /// Adds a relation from out-neighbour lists. A `symmetric` relation must
    /// list every arc in both directions.
    pub fn with_arcs(mut self, out: Vec<Vec<u32>>, symmetric: bool) -> Self {
        assert_eq!(out.len(), self.n);
        let rows = out.iter().map(|l| BitSet::from_indices(self.n, l.iter().map(|&x| x as usize))).collect();
        let inn = (!symmetric).then(|| {
            let mut inn = vec![Vec::new(); self.n];
            for (u, l) in out.iter().enumerate() {
                for &v in l {
                    inn[v as usize].push(u as u32);
                }
            }
            inn
        });
        self.relations.push(Relation { out, inn, rows });
        self
    }

    /// Adds the equivalence relation "same block" (without loops).
    pub fn with_blocks(self, blocks: &[Vec<usize>]) -> Self {
        let mut out = vec![Vec::new(); self.n];
        for b in blocks {
            for &u in b {
                out[u] = b.iter().filter(|&&v| v != u).map(|&v| v as u32).collect();
            }
        }
        self.with_arcs(out, true)
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|v| self.colors[v] == self.colors[p.apply(v)])
            && self.relations.iter().all(|r| {
                (0..self.n).all(|u| {
                    let pu = p.apply(u);
                    r.out[u].len() == r.out[pu].len()
                        && r.out[u].iter().all(|&v| r.rows[pu].contains(p.apply(v as usize)))
                })
            })
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let h = (h ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^ (h >> 29)
}

/// Ordered partition with cells stored as contiguous ranges of `lab`.
#[derive(Clone)]
struct Part {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell holding each position.
    start: Vec<u32>,
    /// Cell length, valid at cell starts.
    len: Vec<u32>,
    cells: usize,
}

struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    mark: Vec<bool>,
    in_queue: Vec<bool>,
}

impl Part {
    fn from_colors(colors: &[u32]) -> Part {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut pos = vec![0u32; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut start = vec![0u32; n];
        let mut len = vec![0u32; n];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let mut e = s + 1;
            while e < n && colors[lab[e] as usize] == colors[lab[s] as usize] {
                e += 1;
            }
            for p in s..e {
                start[p] = s as u32;
            }
            len[s] = (e - s) as u32;
            cells += 1;
            s = e;
        }
        Part { lab, pos, start, len, cells }
    }

    fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s as u32);
            s += self.len[s] as usize;
        }
        out
    }

    fn target_cell(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            if self.len[s] > 1 {
                return Some(s);
            }
            s += self.len[s] as usize;
        }
        None
    }

    fn individualize(&mut self, v: usize) -> u32 {
        let p = self.pos[v] as usize;
        let s = self.start[p] as usize;
        let l = self.len[s] as usize;
        debug_assert!(l > 1);
        let other = self.lab[s];
        self.lab.swap(s, p);
        self.pos[v] = s as u32;
        self.pos[other as usize] = p as u32;
        for q in s + 1..s + l {
            self.start[q] = (s + 1) as u32;
        }
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        self.cells += 1;
        s as u32
    }

    /// Refines to the coarsest equitable partition below `self`, starting from
    /// the given splitter cells. Returns an isomorphism-invariant trace.
    fn refine(&mut self, st: &Structure, initial: &[u32], sc: &mut Scratch, mut trace: u64) -> u64 {
        let n = self.lab.len();
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in initial {
            if !sc.in_queue[s as usize] {
                sc.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut splitter: Vec<u32> = Vec::new();
        let mut starts: Vec<u32> = Vec::new();
        let mut items: Vec<(u32, u32)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            sc.in_queue[w as usize] = false;
            if self.cells == n {
                continue;
            }
            let w = w as usize;
            splitter.clear();
            splitter.extend_from_slice(&self.lab[w..w + self.len[w] as usize]);
            trace = mix(trace, (w as u64) << 32 | splitter.len() as u64);
            for rel in &st.relations {
                for adj in core::iter::once(&rel.out).chain(rel.inn.as_ref()) {
                    for &x in &splitter {
                        for &y in &adj[x as usize] {
                            if sc.count[y as usize] == 0 {
                                sc.touched.push(y);
                            }
                            sc.count[y as usize] += 1;
                        }
                    }
                    starts.clear();
                    for &y in &sc.touched {
                        let s = self.start[self.pos[y as usize] as usize];
                        if !sc.mark[s as usize] {
                            sc.mark[s as usize] = true;
                            starts.push(s);
                        }
                    }
                    starts.sort_unstable();
                    for &s in &starts {
                        sc.mark[s as usize] = false;
                        let s = s as usize;
                        let l = self.len[s] as usize;
                        items.clear();
                        items.extend(self.lab[s..s + l].iter().map(|&v| (sc.count[v as usize], v)));
                        let c0 = items[0].0;
                        if items.iter().all(|&(c, _)| c == c0) {
                            trace = mix(trace, (s as u64) << 32 | c0 as u64);
                            continue;
                        }
                        items.sort_unstable();
                        trace = mix(trace, (s as u64) << 32 | l as u64);
                        let was_queued = sc.in_queue[s];
                        let mut frag_start = s;
                        let mut largest = (0usize, s);
                        let mut frags: Vec<u32> = Vec::new();
                        for i in 0..l {
                            let (c, v) = items[i];
                            self.lab[s + i] = v;
                            self.pos[v as usize] = (s + i) as u32;
                            self.start[s + i] = frag_start as u32;
                            let end = i + 1 == l || items[i + 1].0 != c;
                            if end {
                                let fl = s + i + 1 - frag_start;
                                self.len[frag_start] = fl as u32;
                                trace = mix(trace, (c as u64) << 32 | fl as u64);
                                if fl > largest.0 {
                                    largest = (fl, frag_start);
                                }
                                frags.push(frag_start as u32);
                                frag_start = s + i + 1;
                            }
                        }
                        self.cells += frags.len() - 1;
                        for &f in &frags {
                            let f = f as usize;
                            let push = if was_queued { f != s } else { f != largest.1 };
                            if push && !sc.in_queue[f] {
                                sc.in_queue[f] = true;
                                queue.push_back(f as u32);
                            }
                        }
                    }
                    for &y in &sc.touched {
                        sc.count[y as usize] = 0;
                    }
                    sc.touched.clear();
                }
            }
        }
        mix(trace, self.cells as u64)
    }
}

/// Generators found by [`find_automorphisms`].
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    /// The identity first, then one generator per successful branch.
    pub generators: Vec<Perm>,
    /// False if the node budget ran out.
    pub complete: bool,
    pub nodes: u64,
    /// The base `v_0, v_1, ...` of the first path.
    pub base: Vec<usize>,
    /// `|v_l^{G_{v_0..v_{l-1}}}|` per level; exact only when complete.
    pub orbit_lengths: Vec<u64>,
}

impl AutomorphismGroup {
    /// Group order as the product of basic orbit lengths, when complete.
    pub fn order(&self) -> Option<u128> {
        self.complete.then(|| self.orbit_lengths.iter().map(|&x| x as u128).product())
    }
}

enum Outcome {
    Found(Perm),
    Missing,
    Exhausted,
}

struct Search<'a> {
    st: &'a Structure,
    sc: Scratch,
    /// Trace of the first-path node at each depth.
    traces: Vec<u64>,
    reference: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn child(&mut self, node: &Part, v: usize) -> (Part, u64) {
        let mut c = node.clone();
        let s = c.individualize(v);
        let t = c.refine(self.st, &[s], &mut self.sc, mix(0x1d, s as u64));
        self.nodes += 1;
        (c, t)
    }

    fn leaf_map(&self, leaf: &Part) -> Perm {
        let mut images = vec![0u32; leaf.lab.len()];
        for (&r, &l) in self.reference.iter().zip(&leaf.lab) {
            images[r as usize] = l;
        }
        Perm::from_images_unchecked(images)
    }

    /// Searches below `node` with `v` individualized for a leaf equivalent
    /// to the reference leaf. `depth` is the depth of that child.
    fn explore(&mut self, node: &Part, v: usize, depth: usize) -> Outcome {
        if self.nodes >= self.budget {
            return Outcome::Exhausted;
        }
        let (c, t) = self.child(node, v);
        if t != self.traces[depth] {
            return Outcome::Missing;
        }
        let Some(s) = c.target_cell() else {
            let p = self.leaf_map(&c);
            return if self.st.is_automorphism(&p) { Outcome::Found(p) } else { Outcome::Missing };
        };
        let cell = c.lab[s..s + c.len[s] as usize].to_vec();
        for w in cell {
            match self.explore(&c, w as usize, depth + 1) {
                Outcome::Missing => {}
                found_or_exhausted => return found_or_exhausted,
            }
        }
        Outcome::Missing
    }
}

/// Automorphisms of a graph, searched with at most `budget` tree nodes.
pub fn find_automorphisms(g: &Graph, budget: u64) -> AutomorphismGroup {
    find_automorphisms_of(&Structure::from_graph(g), budget)
}

/// Automorphisms of a general structure.
pub fn find_automorphisms_of(st: &Structure, budget: u64) -> AutomorphismGroup {
    let n = st.n;
    let mut search = Search {
        st,
        sc: Scratch { count: vec![0; n], touched: Vec::new(), mark: vec![false; n], in_queue: vec![false; n] },
        traces: Vec::new(),
        reference: Vec::new(),
        nodes: 1,
        budget,
    };
    let mut root = Part::from_colors(&st.colors);
    let starts = root.cell_starts();
    let t0 = root.refine(st, &starts, &mut search.sc, mix(0, n as u64));
    let mut path = vec![root];
    search.traces.push(t0);
    let mut base = Vec::new();
    while let Some(s) = path.last().and_then(Part::target_cell) {
        let node = path.last().expect("path is nonempty");
        let v = node.lab[s] as usize;
        let (c, t) = search.child(node, v);
        base.push(v);
        path.push(c);
        search.traces.push(t);
    }
    search.reference = path.last().expect("path is nonempty").lab.clone();

    let depth = base.len();
    let mut found: Vec<(usize, Perm)> = Vec::new();
    let mut orbit_lengths = vec![1u64; depth];
    let mut complete = true;
    'levels: for level in (0..depth).rev() {
        let node = &path[level];
        let v = base[level];
        let s = node.start[node.pos[v] as usize] as usize;
        let cell = node.lab[s..s + node.len[s] as usize].to_vec();
        let mut uf = UnionFind::new(n);
        for (_, g) in found.iter().filter(|(l, _)| *l >= level) {
            uf.absorb(g);
        }
        let mut tried: Vec<usize> = Vec::new();
        for w in cell {
            let w = w as usize;
            let rw = uf.find(w);
            if rw == uf.find(v) || tried.iter().any(|&t| uf.find(t) == rw) {
                continue;
            }
            match search.explore(node, w, level + 1) {
                Outcome::Found(p) => {
                    uf.absorb(&p);
                    found.push((level, p));
                }
                Outcome::Missing => tried.push(w),
                Outcome::Exhausted => {
                    complete = false;
                    orbit_lengths[level] = uf.class_size(v) as u64;
                    break 'levels;
                }
            }
        }
        orbit_lengths[level] = uf.class_size(v) as u64;
    }
    let mut generators = vec![Perm::identity(n)];
    generators.extend(found.into_iter().map(|(_, p)| p));
    AutomorphismGroup { generators, complete, nodes: search.nodes, base, orbit_lengths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, doubled_odd_graph, hadamard_graph, paley_hadamard, path_graph};
    use crate::groups::{PermGroup, CLOSURE_CAP};

    fn brute_force_order(g: &Graph) -> u64 {
        // Heap's algorithm over all n! bijections
        let n = g.n();
        let mut a: Vec<u32> = (0..n as u32).collect();
        let mut c = vec![0usize; n];
        let mut count = 0;
        let check = |a: &[u32]| crate::groups::is_automorphism(g, &Perm::from_images(a.to_vec()).unwrap()).unwrap();
        count += check(&a) as u64;
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                count += check(&a) as u64;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        count
    }

    fn check(g: &Graph, expected: u128) {
        let aut = find_automorphisms(g, 1_000_000);
        assert!(aut.complete);
        assert_eq!(aut.order(), Some(expected));
        for p in &aut.generators {
            assert!(crate::groups::is_automorphism(g, p).unwrap());
        }
        if expected <= 100_000 {
            let group = PermGroup::new(g.n(), aut.generators.clone()).unwrap();
            assert_eq!(group.order(CLOSURE_CAP).map(u128::from), Some(expected));
        }
    }

    #[test]
    fn small_graphs_against_brute_force() {
        for g in [cycle_graph(4), cycle_graph(5), path_graph(4), complete_graph(4)] {
            let expected = brute_force_order(&g);
            check(&g, expected as u128);
        }
        assert_eq!(brute_force_order(&cycle_graph(4)), 8);
    }

    #[test]
    fn rigid_graph() {
        // smallest asymmetric tree: spider with legs 1, 2, 3
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        check(&g, 1);
    }

    #[test]
    fn petersen_like_groups() {
        // D(O_3) is the doubled Petersen graph: Aut = S_5 × Z_2
        check(&doubled_odd_graph(2).unwrap(), 240);
        check(&doubled_odd_graph(3).unwrap(), 10080);
        check(&cycle_graph(30), 60);
    }

    #[test]
    fn hadamard_group_order() {
        check(&hadamard_graph(&paley_hadamard(11).unwrap()), 380160);
    }

    #[test]
    fn colours_and_directed_arcs() {
        // directed 5-cycle: only the rotations
        let arcs: Vec<Vec<u32>> = (0..5).map(|v| vec![(v + 1) % 5]).collect();
        let st = Structure::new(5).with_arcs(arcs, false);
        let aut = find_automorphisms_of(&st, 10_000);
        assert_eq!(aut.order(), Some(5));
        let st = Structure::from_graph(&cycle_graph(6)).with_colors(vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(find_automorphisms_of(&st, 10_000).order(), Some(2));
        let st = Structure::from_graph(&cycle_graph(6)).with_blocks(&[vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(find_automorphisms_of(&st, 10_000).order(), Some(12));
    }

    #[test]
    fn budget_exhaustion_flagged() {
        let aut = find_automorphisms(&complete_graph(8), 3);
        assert!(!aut.complete);
        assert_eq!(aut.order(), None);
        assert!(aut.generators[0].is_identity());
    }
}

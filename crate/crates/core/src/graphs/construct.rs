use alloc::vec;
use alloc::vec::Vec;

use super::Graph;
use crate::{Error, Result};

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid edges")
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).expect("n >= 3")
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|u| (u - 1, u))).expect("valid edges")
}

/// Bipartite double: vertex `v` of `g` becomes `v` and `n + v`, with
/// `u ~ n + v` whenever `u ~ v`.
pub fn bipartite_double(g: &Graph) -> Graph {
    let n = g.n();
    let mut d = Graph::new(2 * n);
    for (u, v) in g.edges() {
        d.add_edge(u, n + v).expect("in range");
        d.add_edge(v, n + u).expect("in range");
    }
    d
}

/// Square ±1 matrix with `H·Hᵀ = n·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    /// Validates orthogonality; orders below 4 are rejected.
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let n = entries.len();
        if n < 4 || n % 4 != 0 || entries.iter().any(|r| r.len() != n || r.iter().any(|&x| x != 1 && x != -1)) {
            return Err(Error::NotHadamard);
        }
        for i in 0..n {
            for j in i + 1..n {
                let dot: i32 = entries[i].iter().zip(&entries[j]).map(|(&a, &b)| (a * b) as i32).sum();
                if dot != 0 {
                    return Err(Error::NotHadamard);
                }
            }
        }
        Ok(HadamardMatrix { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.entries[r][c]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.entries
    }
}

/// Paley construction for a prime `q ≡ 3 (mod 4)`: a Hadamard matrix of order `q + 1`.
pub fn paley_hadamard(q: usize) -> Result<HadamardMatrix> {
    if q % 4 != 3 || !crate::algebra::is_prime(q as u32) {
        return Err(Error::NotHadamard);
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let chi = |x: usize| -> i8 {
        if x == 0 {
            0
        } else if residue[x] {
            1
        } else {
            -1
        }
    };
    let n = q + 1;
    let mut h = vec![vec![0i8; n]; n];
    h[0].iter_mut().for_each(|x| *x = 1);
    for r in 1..n {
        h[r][0] = -1;
        for c in 1..n {
            h[r][c] = chi((c + q - r) % q) + if r == c { 1 } else { 0 };
        }
    }
    HadamardMatrix::new(h)
}

/// Hadamard graph of an order-`n` Hadamard matrix: `4n` vertices
/// `r_i^+, r_i^-, c_j^+, c_j^-` (in that block order) with `r_i^s ~ c_j^{s·h_ij}`.
pub fn hadamard_graph(h: &HadamardMatrix) -> Graph {
    let n = h.order();
    let mut g = Graph::new(4 * n);
    for i in 0..n {
        for j in 0..n {
            let (plus, minus) = (2 * n + j, 3 * n + j);
            let (a, b) = if h.entry(i, j) == 1 { (plus, minus) } else { (minus, plus) };
            g.add_edge(i, a).expect("in range");
            g.add_edge(n + i, b).expect("in range");
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect();
    out.sort_by_key(|&s| {
        let mut key = [0u8; 32];
        for (slot, i) in key.iter_mut().zip((0..n).filter(|&i| s >> i & 1 == 1)) {
            *slot = i as u8;
        }
        key
    });
    out
}

/// Doubled Odd graph `D(O_{k+1})`: the `k`- and `(k+1)`-subsets of a
/// `(2k+1)`-set, adjacent under inclusion. `k`-subsets come first, each block
/// in lexicographic order.
pub fn doubled_odd_graph(k: usize) -> Result<Graph> {
    if !(1..=14).contains(&k) {
        return Err(Error::InvalidGraph(alloc::format!("doubled odd graph needs 1 <= k <= 14, got {k}")));
    }
    let lower = subsets(2 * k + 1, k);
    let upper = subsets(2 * k + 1, k + 1);
    let offset = lower.len();
    let mut g = Graph::new(lower.len() + upper.len());
    for (a, &s) in lower.iter().enumerate() {
        for (b, &t) in upper.iter().enumerate() {
            if s & t == s {
                g.add_edge(a, offset + b)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{distance_matrices, verify_distance_regular};

    fn array(g: &Graph) -> (Vec<u64>, Vec<u64>) {
        let ia = verify_distance_regular(&distance_matrices(g).unwrap()).unwrap();
        (ia.b, ia.c)
    }

    #[test]
    fn double_of_edge() {
        let d = bipartite_double(&complete_graph(2));
        assert_eq!(d.n(), 4);
        assert_eq!(d.edge_count(), 2);
        assert!(d.is_bipartite());
    }

    #[test]
    fn paley_order_12() {
        let h = paley_hadamard(11).unwrap();
        assert_eq!(h.order(), 12);
        assert!(paley_hadamard(13).is_err());
    }

    #[test]
    fn hadamard_graph_48() {
        let g = hadamard_graph(&paley_hadamard(11).unwrap());
        assert_eq!(g.n(), 48);
        assert_eq!(g.regular_degree(), Some(12));
        assert!(g.is_bipartite());
        assert_eq!(array(&g), (vec![12, 11, 6, 1], vec![1, 6, 11, 12]));
    }

    #[test]
    fn negated_row_keeps_array() {
        let h = paley_hadamard(11).unwrap();
        let mut rows = h.rows().to_vec();
        rows[3].iter_mut().for_each(|x| *x = -*x);
        let g = hadamard_graph(&HadamardMatrix::new(rows).unwrap());
        assert_eq!(array(&g), (vec![12, 11, 6, 1], vec![1, 6, 11, 12]));
    }

    #[test]
    fn order_two_rejected() {
        assert_eq!(HadamardMatrix::new(vec![vec![1, 1], vec![1, -1]]), Err(Error::NotHadamard));
        let mut bad = paley_hadamard(11).unwrap().rows().to_vec();
        bad[0][0] = -1;
        assert_eq!(HadamardMatrix::new(bad), Err(Error::NotHadamard));
    }

    #[test]
    fn doubled_odd_sizes() {
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        for k in 1..=4 {
            let g = doubled_odd_graph(k).unwrap();
            assert_eq!(g.n(), binom(2 * k + 1, k) + binom(2 * k + 1, k + 1));
            assert_eq!(g.regular_degree(), Some(k + 1));
        }
        let d3 = doubled_odd_graph(3).unwrap();
        assert_eq!(d3.n(), 70);
        assert_eq!(array(&d3), (vec![4, 3, 3, 2, 2, 1, 1], vec![1, 1, 2, 2, 3, 3, 4]));
    }

    #[test]
    fn doubled_petersen_by_bfs() {
        // Independent oracle: plain BFS eccentricities on the inclusion graph.
        let g = doubled_odd_graph(2).unwrap();
        assert_eq!(g.n(), 20);
        assert_eq!(g.regular_degree(), Some(3));
        let mut diameter = 0;
        for s in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = alloc::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in g.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            diameter = diameter.max(*dist.iter().max().unwrap());
        }
        assert_eq!(diameter, 5);
    }
}

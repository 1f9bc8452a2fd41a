use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Graph;
use crate::bitset::BitSet;
use crate::{par, Error, Result};

/// Distance classes `A_0..A_d` of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceSystem {
    n: usize,
    diameter: usize,
    dist: Vec<u8>,
    classes: Vec<Vec<BitSet>>,
}

impl DistanceSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    /// Row `v` of `A_i`.
    #[inline]
    pub fn class_row(&self, i: usize, v: usize) -> &BitSet {
        &self.classes[i][v]
    }

    /// All of `A_i` as bit rows.
    pub fn class(&self, i: usize) -> &[BitSet] {
        &self.classes[i]
    }
}

/// Breadth-first distance classes. Disconnected input is an error.
pub fn distance_matrices(g: &Graph) -> Result<DistanceSystem> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if n > u8::MAX as usize * 64 {
        return Err(Error::InvalidGraph("graph too large".into()));
    }
    let lists = g.adjacency_lists();
    let rows: Vec<Vec<u8>> = par::map_range(n, |s| {
        let mut d = vec![u8::MAX; n];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &lists[u] {
                let v = v as usize;
                if d[v] == u8::MAX {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        d
    });
    if let Some(v) = rows[0].iter().position(|&x| x == u8::MAX) {
        return Err(Error::Disconnected { unreachable: v });
    }
    let diameter = rows.iter().flat_map(|r| r.iter()).copied().max().unwrap_or(0) as usize;
    let mut classes = vec![vec![BitSet::new(n); n]; diameter + 1];
    for (u, row) in rows.iter().enumerate() {
        for (v, &d) in row.iter().enumerate() {
            classes[d as usize][u].insert(v);
        }
    }
    Ok(DistanceSystem { n, diameter, dist: rows.concat(), classes })
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}` plus the valencies `k_0..k_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub valencies: Vec<u64>,
}

impl IntersectionArray {
    /// Builds an array from `b` and `c`, deriving valencies via `k_{i+1} = k_i b_i / c_{i+1}`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        if b.len() != c.len() || b.is_empty() {
            return Err(Error::NotDistanceRegular("b and c must have equal nonzero length".into()));
        }
        let mut valencies = vec![1u64];
        for i in 0..b.len() {
            let num = valencies[i] * b[i];
            if c[i] == 0 || num % c[i] != 0 {
                return Err(Error::NotDistanceRegular("valencies are not integral".into()));
            }
            valencies.push(num / c[i]);
        }
        Ok(IntersectionArray { b, c, valencies })
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn degree(&self) -> u64 {
        self.b[0]
    }

    pub fn vertex_count(&self) -> u64 {
        self.valencies.iter().sum()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[u64]| -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        f.write_str("{")?;
        join(f, &self.b)?;
        f.write_str(";")?;
        join(f, &self.c)?;
        f.write_str("}")
    }
}

impl core::str::FromStr for IntersectionArray {
    type Err = Error;

    /// Parses `{b_0,...;c_1,...}` (braces and spaces optional).
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let (b, c) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse { offset: 0, message: "missing ';' in intersection array".into() })?;
        let nums = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse { offset: 0, message: alloc::format!("bad number `{t}`") })
                })
                .collect()
        };
        IntersectionArray::new(nums(b)?, nums(c)?)
    }
}

/// Two vertex pairs at the same distance `k` whose counts
/// `|Γ_i(v) ∩ Γ_j(w)|` differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub first: (usize, usize),
    pub first_count: u64,
    pub second: (usize, usize),
    pub second_count: u64,
}

impl fmt::Display for RegularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|G_{i}(v) ∩ G_{j}(w)| is {} for (v,w) = {:?} but {} for {:?} (both at distance {k})",
            self.first_count,
            self.first,
            self.second_count,
            self.second,
            i = self.i,
            j = self.j,
            k = self.k
        )
    }
}

/// Counts `|Γ_i(v) ∩ Γ_j(w)|` over all ordered pairs and checks that it only
/// depends on `δ(v, w)`. Returns the constants as a flat `(d+1)^3` table
/// indexed `[i][j][k]`, or the first pair that breaks constancy.
pub(crate) fn pair_counts<'a>(
    d: usize,
    n: usize,
    relation: impl Fn(usize, usize) -> usize + Sync,
    row: impl Fn(usize, usize) -> &'a BitSet + Sync,
) -> core::result::Result<Vec<u64>, RegularityWitness> {
    let size = d + 1;
    let per_source = par::map_range(n, |v| {
        // (value, w) per (i, j, k), or an internal witness
        let mut table: Vec<Option<(u64, usize)>> = vec![None; size * size * size];
        for w in 0..n {
            let k = relation(v, w);
            for i in 0..size {
                let rv = row(i, v);
                for j in 0..size {
                    let c = rv.intersection_count(row(j, w)) as u64;
                    let slot = &mut table[(i * size + j) * size + k];
                    match *slot {
                        None => *slot = Some((c, w)),
                        Some((x, w0)) if x != c => {
                            return Err(RegularityWitness {
                                i,
                                j,
                                k,
                                first: (v, w0),
                                first_count: x,
                                second: (v, w),
                                second_count: c,
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(table)
    });
    let mut merged: Vec<Option<(u64, (usize, usize))>> = vec![None; size * size * size];
    for (v, res) in per_source.into_iter().enumerate() {
        let table = res?;
        for (idx, entry) in table.into_iter().enumerate() {
            let Some((c, w)) = entry else { continue };
            match merged[idx] {
                None => merged[idx] = Some((c, (v, w))),
                Some((x, first)) if x != c => {
                    let k = idx % size;
                    let j = (idx / size) % size;
                    let i = idx / (size * size);
                    return Err(RegularityWitness {
                        i,
                        j,
                        k,
                        first,
                        first_count: x,
                        second: (v, w),
                        second_count: c,
                    });
                }
                _ => {}
            }
        }
    }
    Ok(merged.into_iter().map(|e| e.map_or(0, |(c, _)| c)).collect())
}

/// Checks distance-regularity by direct pair counting.
pub fn verify_distance_regular(ds: &DistanceSystem) -> core::result::Result<IntersectionArray, RegularityWitness> {
    let d = ds.diameter;
    let size = d + 1;
    let p = pair_counts(d, ds.n, |v, w| ds.distance(v, w), |i, v| ds.class_row(i, v))?;
    let at = |i: usize, j: usize, k: usize| p[(i * size + j) * size + k];
    let b = (0..d).map(|i| at(i + 1, 1, i)).collect();
    let c = (1..=d).map(|i| at(i - 1, 1, i)).collect();
    let valencies = (0..=d).map(|i| at(i, i, 0)).collect();
    Ok(IntersectionArray { b, c, valencies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn triangle_is_one_class() {
        let ds = distance_matrices(&complete_graph(3)).unwrap();
        assert_eq!(ds.diameter(), 1);
        let g = complete_graph(3);
        for v in 0..3 {
            assert_eq!(ds.class_row(1, v), g.row(v));
        }
    }

    #[test]
    fn square_antipodes() {
        let ds = distance_matrices(&cycle_graph(4)).unwrap();
        assert_eq!(ds.diameter(), 2);
        for v in 0..4 {
            let row: Vec<usize> = ds.class_row(2, v).iter().collect();
            assert_eq!(row, vec![(v + 2) % 4]);
        }
    }

    #[test]
    fn classes_partition_all_pairs() {
        for g in [cycle_graph(7), path_graph(5), complete_graph(4)] {
            let ds = distance_matrices(&g).unwrap();
            for v in 0..g.n() {
                let total: usize = (0..=ds.diameter()).map(|i| ds.class_row(i, v).count()).sum();
                assert_eq!(total, g.n());
                assert_eq!(ds.class_row(0, v).iter().collect::<Vec<_>>(), vec![v]);
            }
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance_matrices(&g), Err(Error::Disconnected { unreachable: 2 }));
    }

    #[test]
    fn path_is_not_distance_regular() {
        let ds = distance_matrices(&path_graph(3)).unwrap();
        let w = verify_distance_regular(&ds).unwrap_err();
        assert_ne!(w.first_count, w.second_count);
        assert_eq!(ds.distance(w.first.0, w.first.1), w.k);
        assert_eq!(ds.distance(w.second.0, w.second.1), w.k);
    }

    #[test]
    fn cycle_arrays() {
        let ia = verify_distance_regular(&distance_matrices(&cycle_graph(7)).unwrap()).unwrap();
        assert_eq!(ia.to_string(), "{2,1,1;1,1,1}");
        assert_eq!(ia.valencies, vec![1, 2, 2, 2]);
        let parsed: IntersectionArray = "{2,1,1; 1,1,1}".parse().unwrap();
        assert_eq!(parsed, ia);
    }

    #[test]
    fn valency_recurrence() {
        let ia: IntersectionArray = "{3,2,2,2,2,1,1,1;1,1,1,1,2,2,2,3}".parse().unwrap();
        assert_eq!(ia.vertex_count(), 90);
        for i in 0..ia.diameter() {
            assert_eq!(ia.valencies[i] * ia.b[i], ia.valencies[i + 1] * ia.c[i]);
        }
    }
}

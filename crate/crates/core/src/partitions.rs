//! Equitable partitions and quotient matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::IntMat;
use crate::schemes::{AssociationScheme, IntersectionTensor};
use crate::{par, Error, Result};

/// A partition of `{0..n-1}` into nonempty cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    cells: Vec<Vec<usize>>,
    cell_of: Vec<u32>,
}

impl Partition {
    /// Validates that `cells` are nonempty, disjoint and cover `{0..n-1}`.
    /// Each cell is sorted; cell order is kept.
    pub fn new(n: usize, mut cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![u32::MAX; n];
        for (c, cell) in cells.iter_mut().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidPartition(format!("cell {c} is empty")));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("point {v} out of range for n = {n}")));
                }
                if cell_of[v] != u32::MAX {
                    return Err(Error::InvalidPartition(format!("point {v} appears twice")));
                }
                cell_of[v] = c as u32;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::InvalidPartition(format!("point {v} is in no cell")));
        }
        Ok(Partition { n, cells, cell_of })
    }

    /// Builds the partition from a cell label per point; cells ordered by minimum element.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index = hashbrown::HashMap::new();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let c = *index.entry(l).or_insert_with(|| {
                cells.push(Vec::new());
                cells.len() - 1
            });
            cells[c].push(v);
        }
        let cell_of = labels.iter().map(|l| index[l] as u32).collect();
        Partition { n: labels.len(), cells, cell_of }
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Partition { n, cells: (0..n).map(|v| vec![v]).collect(), cell_of: (0..n as u32).collect() }
    }

    /// One cell holding every point.
    pub fn one_cell(n: usize) -> Self {
        Partition { n, cells: vec![(0..n).collect()], cell_of: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    #[inline]
    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v] as usize
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn is_uniform(&self) -> bool {
        self.cells.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Errors with two differing cell sizes unless the partition is uniform.
    pub fn require_uniform(&self) -> Result<()> {
        match self.cells.iter().find(|c| c.len() != self.cells[0].len()) {
            None => Ok(()),
            Some(c) => Err(Error::NonUniformPartition { sizes: (self.cells[0].len(), c.len()) }),
        }
    }
}

/// The `n × t` characteristic matrix `H` of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix {
    h: IntMat,
    partition: Partition,
}

impl CharMatrix {
    pub fn new(partition: &Partition) -> Self {
        let h = IntMat::from_fn(partition.n(), partition.len(), |v, c| (partition.cell_of(v) == c) as i64);
        CharMatrix { h, partition: partition.clone() }
    }

    /// Accepts a 0/1 matrix with exactly one 1 per row and no zero column.
    pub fn from_matrix(h: IntMat) -> Result<Self> {
        let mut labels = Vec::with_capacity(h.rows());
        for r in 0..h.rows() {
            let row = h.row(r);
            if row.iter().any(|&x| x != 0 && x != 1) || row.iter().filter(|&&x| x == 1).count() != 1 {
                return Err(Error::InvalidPartition(format!("row {r} of H must contain exactly one 1")));
            }
            labels.push(row.iter().position(|&x| x == 1).unwrap_or(0));
        }
        let mut cells = vec![Vec::new(); h.cols()];
        for (v, &c) in labels.iter().enumerate() {
            cells[c].push(v);
        }
        let partition = Partition::new(h.rows(), cells)?;
        Ok(CharMatrix { h, partition })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.h
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

/// An equitable partition with its quotient matrices `M_0..M_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSystem {
    partition: Partition,
    quotients: Vec<IntMat>,
}

impl QuotientSystem {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn quotient(&self, i: usize) -> &IntMat {
        &self.quotients[i]
    }

    pub fn quotients(&self) -> &[IntMat] {
        &self.quotients
    }

    pub fn quotients_mut(&mut self) -> &mut [IntMat] {
        &mut self.quotients
    }

    pub fn is_uniform(&self) -> bool {
        self.partition.is_uniform()
    }

    /// Number of cells `t`.
    pub fn t(&self) -> usize {
        self.partition.len()
    }
}

/// Two points of cell `a` with different numbers of `R_i`-neighbours in cell `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableWitness {
    pub i: usize,
    pub a: usize,
    pub b: usize,
    pub u: usize,
    pub u_count: u64,
    pub v: usize,
    pub v_count: u64,
}

impl fmt::Display for EquitableWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in R_{}, vertices {} and {} of cell {} have {} and {} neighbours in cell {}",
            self.i, self.u, self.v, self.a, self.u_count, self.v_count, self.b
        )
    }
}

/// `counts[v][b]`: number of `R_i`-neighbours of `v` in cell `b`.
fn neighbour_counts(s: &AssociationScheme, part: &Partition, i: usize) -> Vec<Vec<u64>> {
    let t = part.len();
    s.relation(i)
        .iter()
        .map(|row| {
            let mut c = vec![0u64; t];
            for w in row.iter() {
                c[part.cell_of(w)] += 1;
            }
            c
        })
        .collect()
}

/// Counts neighbours cell by cell; returns the quotient matrices or the first
/// pair of points in one cell that disagree.
pub fn check_equitable(s: &AssociationScheme, part: &Partition) -> core::result::Result<QuotientSystem, EquitableWitness> {
    if part.n() != s.point_count() {
        return Err(EquitableWitness { i: 0, a: 0, b: 0, u: part.n(), u_count: 0, v: s.point_count(), v_count: 0 });
    }
    let t = part.len();
    let per_relation = par::map_range(s.classes() + 1, |i| {
        let counts = neighbour_counts(s, part, i);
        let mut m = IntMat::zeros(t, t);
        for (a, cell) in part.cells().iter().enumerate() {
            let u = cell[0];
            for &v in &cell[1..] {
                if let Some(b) = (0..t).find(|&b| counts[v][b] != counts[u][b]) {
                    return Err(EquitableWitness { i, a, b, u, u_count: counts[u][b], v, v_count: counts[v][b] });
                }
            }
            for b in 0..t {
                m.set(a, b, counts[u][b] as i64);
            }
        }
        Ok(m)
    });
    let quotients = per_relation.into_iter().collect::<core::result::Result<Vec<_>, _>>()?;
    Ok(QuotientSystem { partition: part.clone(), quotients })
}

/// `M_i = (HᵀH)⁻¹ HᵀA_iH`, checked for integrality and against neighbour counting.
pub fn quotient_by_projection(s: &AssociationScheme, h: &CharMatrix) -> Result<QuotientSystem> {
    let part = h.partition();
    if h.matrix().rows() != s.point_count() {
        return Err(Error::DimensionMismatch {
            op: "quotient_by_projection",
            left: (s.point_count(), s.point_count()),
            right: (h.matrix().rows(), h.matrix().cols()),
        });
    }
    let t = part.len();
    let ht = h.matrix().transpose();
    let mut quotients = Vec::with_capacity(s.classes() + 1);
    for i in 0..=s.classes() {
        let a = s.matrix(i);
        let proj = ht.mul(&a)?.mul(h.matrix())?;
        let mut m = IntMat::zeros(t, t);
        for r in 0..t {
            // (HᵀH)⁻¹ is diagonal with 1/|C_r|
            let size = part.cells()[r].len() as i64;
            for c in 0..t {
                let x = proj.get(r, c);
                if x % size != 0 {
                    return Err(Error::NotEquitable(format!(
                        "entry ({r},{c}) of M_{i} is {x}/{size}, not an integer"
                    )));
                }
                m.set(r, c, x / size);
            }
        }
        quotients.push(m);
    }
    let counted = check_equitable(s, part).map_err(|w| Error::NotEquitable(format!("{w}")))?;
    if counted.quotients != quotients {
        return Err(Error::Inconsistent("projection and counting quotients differ".into()));
    }
    Ok(QuotientSystem { partition: part.clone(), quotients })
}

/// Checks `M_i M_j = Σ_k p_ij^k M_k` over the integers for all `i, j`;
/// returns the first failing pair.
pub fn verify_quotient_identity(qs: &QuotientSystem, t: &IntersectionTensor) -> core::result::Result<(), (usize, usize)> {
    let d = t.d();
    if qs.quotients.len() != d + 1 {
        return Err((d + 1, qs.quotients.len()));
    }
    let size = qs.t();
    for i in 0..=d {
        for j in 0..=d {
            let lhs = qs.quotients[i].mul(&qs.quotients[j]).map_err(|_| (i, j))?;
            let mut rhs = IntMat::zeros(size, size);
            for k in 0..=d {
                let c = t.get(i, j, k);
                if c != 0 {
                    rhs = rhs.add_scaled(&qs.quotients[k], c as i64).map_err(|_| (i, j))?;
                }
            }
            if lhs != rhs {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Checks `A_i H = H M_i` for every relation.
pub fn verify_intertwining(s: &AssociationScheme, qs: &QuotientSystem) -> bool {
    let part = qs.partition();
    part.n() == s.point_count()
        && qs.quotients.len() == s.classes() + 1
        && (0..=s.classes()).all(|i| {
            let m = &qs.quotients[i];
            neighbour_counts(s, part, i)
                .iter()
                .enumerate()
                .all(|(v, counts)| counts.iter().enumerate().all(|(b, &c)| m.get(part.cell_of(v), b) == c as i64))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle_graph, distance_matrices, doubled_odd_graph, Graph};
    use proptest::prelude::*;

    fn scheme(g: &Graph) -> AssociationScheme {
        AssociationScheme::from_distance_regular(&distance_matrices(g).unwrap()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 5]]).is_err());
        let p = Partition::from_labels(&[7, 3, 7, 3]);
        assert_eq!(p.cells(), &[vec![0, 2], vec![1, 3]]);
        assert!(p.is_uniform());
        assert_eq!(
            Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap().require_uniform(),
            Err(Error::NonUniformPartition { sizes: (2, 1) })
        );
    }

    #[test]
    fn discrete_quotients_are_adjacency() {
        let s = scheme(&doubled_odd_graph(2).unwrap());
        let qs = check_equitable(&s, &Partition::discrete(s.point_count())).unwrap();
        for i in 0..=s.classes() {
            assert_eq!(qs.quotient(i), &s.matrix(i));
        }
        let t = s.intersection_tensor().unwrap();
        assert_eq!(verify_quotient_identity(&qs, &t), Ok(()));
    }

    #[test]
    fn one_cell_gives_valencies() {
        let s = scheme(&doubled_odd_graph(3).unwrap());
        let t = s.intersection_tensor().unwrap();
        let qs = check_equitable(&s, &Partition::one_cell(70)).unwrap();
        for i in 0..=s.classes() {
            assert_eq!(qs.quotient(i).get(0, 0), t.valency(i) as i64);
        }
        assert_eq!(verify_quotient_identity(&qs, &t), Ok(()));
    }

    #[test]
    fn square_antipodal_pairs() {
        let s = scheme(&cycle_graph(4));
        let part = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let qs = quotient_by_projection(&s, &CharMatrix::new(&part)).unwrap();
        assert_eq!(qs.quotient(1), &IntMat::from_rows(&[[0, 2], [2, 0]]).unwrap());
        assert!(verify_intertwining(&s, &qs));
    }

    #[test]
    fn non_equitable_witness() {
        let s = scheme(&cycle_graph(6));
        let part = Partition::new(6, vec![vec![0, 1], vec![2, 3, 4, 5]]).unwrap();
        let w = check_equitable(&s, &part).unwrap_err();
        assert_ne!(w.u_count, w.v_count);
        assert_eq!(part.cell_of(w.u), w.a);
        assert_eq!(part.cell_of(w.v), w.a);
        assert!(quotient_by_projection(&s, &CharMatrix::new(&part)).is_err());
    }

    #[test]
    fn corrupted_quotient_detected() {
        let s = scheme(&cycle_graph(8));
        let t = s.intersection_tensor().unwrap();
        let part = Partition::from_labels(&[0, 1, 2, 3, 0, 1, 2, 3]);
        let mut qs = check_equitable(&s, &part).unwrap();
        assert_eq!(verify_quotient_identity(&qs, &t), Ok(()));
        let x = qs.quotient(1).get(0, 1);
        qs.quotients_mut()[1].set(0, 1, x + 1);
        // M_0 M_1 = M_1 survives any corruption of M_1
        assert_eq!(verify_quotient_identity(&qs, &t), Err((1, 1)));
        assert!(!verify_intertwining(&s, &qs));
    }

    #[test]
    fn char_matrix_roundtrip() {
        let part = Partition::new(4, vec![vec![1, 3], vec![0, 2]]).unwrap();
        let h = CharMatrix::new(&part);
        let hh = h.matrix().transpose().mul(h.matrix()).unwrap();
        assert_eq!(hh, IntMat::from_rows(&[[2, 0], [0, 2]]).unwrap());
        assert_eq!(CharMatrix::from_matrix(h.matrix().clone()).unwrap().partition(), &part);
        assert!(CharMatrix::from_matrix(IntMat::from_rows(&[[1, 1], [0, 1]]).unwrap()).is_err());
    }

    proptest! {
        // rotations of a cycle give uniform orbit partitions
        #[test]
        fn cycle_rotation_orbits(n in 3usize..30, step in 1usize..30) {
            let s = scheme(&cycle_graph(n));
            let g = crate::algebra::gcd(n as u64, step as u64) as usize;
            let part = Partition::from_labels(&(0..n).map(|v| v % g).collect::<Vec<_>>());
            let qs = check_equitable(&s, &part).unwrap();
            prop_assert!(qs.quotients().iter().all(IntMat::is_symmetric));
            prop_assert!(verify_intertwining(&s, &qs));
            let t = s.intersection_tensor().unwrap();
            prop_assert_eq!(verify_quotient_identity(&qs, &t), Ok(()));
            for i in 0..=s.classes() {
                prop_assert!(qs.quotient(i).row_sums().iter().all(|&r| r == t.valency(i) as i64));
            }
        }
    }
}

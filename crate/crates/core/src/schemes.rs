//! Symmetric association schemes and their intersection numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::IntMat;
use crate::bitset::BitSet;
use crate::graphs::distance::pair_counts;
use crate::graphs::{verify_distance_regular, DistanceSystem};
use crate::{par, Error, Result};

/// Relations `R_0..R_d` on `n` points, each stored as `n` bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationScheme {
    n: usize,
    relations: Vec<Vec<BitSet>>,
}

/// The first axiom a candidate scheme breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `(u, v)` lies in `count` relations instead of exactly one.
    Partition { u: usize, v: usize, count: usize },
    /// `R_0` is not the diagonal at `(u, v)`.
    Diagonal { u: usize, v: usize },
    /// `(u, v) ∈ R_i` but `(v, u) ∉ R_i`.
    Symmetry { i: usize, u: usize, v: usize },
    /// `p_ij^k` differs between two pairs of `R_k`.
    IntersectionNumber {
        i: usize,
        j: usize,
        k: usize,
        first: (usize, usize),
        first_count: u64,
        second: (usize, usize),
        second_count: u64,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Partition { u, v, count } => {
                write!(f, "partition axiom: ({u},{v}) lies in {count} relations")
            }
            AxiomViolation::Diagonal { u, v } => write!(f, "diagonal axiom: R_0 disagrees with identity at ({u},{v})"),
            AxiomViolation::Symmetry { i, u, v } => write!(f, "symmetry axiom: ({u},{v}) in R_{i} but ({v},{u}) is not"),
            AxiomViolation::IntersectionNumber { i, j, k, first, first_count, second, second_count } => write!(
                f,
                "p_{i},{j}^{k} is not constant: {first_count} at {first:?}, {second_count} at {second:?}"
            ),
        }
    }
}

impl AssociationScheme {
    /// Distance scheme of a distance-regular graph.
    pub fn from_distance_regular(ds: &DistanceSystem) -> Result<Self> {
        verify_distance_regular(ds).map_err(|w| Error::NotDistanceRegular(format!("{w}")))?;
        let relations = (0..=ds.diameter()).map(|i| ds.class(i).to_vec()).collect();
        Ok(AssociationScheme { n: ds.n(), relations })
    }

    /// Wraps relation matrices without checking any axiom.
    pub fn from_relations(relations: Vec<Vec<BitSet>>) -> Result<Self> {
        let n = relations.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::InvalidScheme("no relations or no points".into()));
        }
        for rel in &relations {
            if rel.len() != n || rel.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidScheme("relation matrices must all be n×n".into()));
            }
        }
        Ok(AssociationScheme { n, relations })
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    /// Number of non-identity classes.
    pub fn classes(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn relation(&self, i: usize) -> &[BitSet] {
        &self.relations[i]
    }

    pub fn relation_mut(&mut self, i: usize) -> &mut [BitSet] {
        &mut self.relations[i]
    }

    /// `A_i` as an integer matrix.
    pub fn matrix(&self, i: usize) -> IntMat {
        let rel = &self.relations[i];
        IntMat::from_fn(self.n, self.n, |u, v| rel[u].contains(v) as i64)
    }

    /// Index of the relation holding `(u, v)`; assumes the partition axiom.
    pub fn relation_of(&self, u: usize, v: usize) -> usize {
        self.relations.iter().position(|r| r[u].contains(v)).unwrap_or(usize::MAX)
    }

    fn relation_table(&self) -> Vec<u8> {
        let mut table = vec![u8::MAX; self.n * self.n];
        for (i, rel) in self.relations.iter().enumerate() {
            for (u, row) in rel.iter().enumerate() {
                for v in row.iter() {
                    table[u * self.n + v] = i as u8;
                }
            }
        }
        table
    }

    /// Checks partition, diagonal, symmetry and constancy of every `p_ij^k`.
    pub fn verify_axioms(&self) -> core::result::Result<(), AxiomViolation> {
        let n = self.n;
        if self.relations.len() > u8::MAX as usize {
            return Err(AxiomViolation::Partition { u: 0, v: 0, count: self.relations.len() });
        }
        for u in 0..n {
            for v in 0..n {
                let count = self.relations.iter().filter(|r| r[u].contains(v)).count();
                if count != 1 {
                    return Err(AxiomViolation::Partition { u, v, count });
                }
            }
        }
        for u in 0..n {
            if self.relations[0][u].count() != 1 || !self.relations[0][u].contains(u) {
                let v = self.relations[0][u].iter().find(|&v| v != u).unwrap_or(u);
                return Err(AxiomViolation::Diagonal { u, v });
            }
        }
        for (i, rel) in self.relations.iter().enumerate() {
            for u in 0..n {
                if let Some(v) = rel[u].iter().find(|&v| !rel[v].contains(u)) {
                    return Err(AxiomViolation::Symmetry { i, u, v });
                }
            }
        }
        let table = self.relation_table();
        pair_counts(self.classes(), n, |u, v| table[u * n + v] as usize, |i, u| &self.relations[i][u])
            .map(drop)
            .map_err(|w| AxiomViolation::IntersectionNumber {
                i: w.i,
                j: w.j,
                k: w.k,
                first: w.first,
                first_count: w.first_count,
                second: w.second,
                second_count: w.second_count,
            })
    }

    /// Reads `p_ij^k` off the integer product `A_i A_j`, asserting that every
    /// position of `A_k` carries the same coefficient.
    pub fn intersection_tensor(&self) -> Result<IntersectionTensor> {
        let n = self.n;
        let size = self.relations.len();
        let table = self.relation_table();
        if let Some(pos) = table.iter().position(|&r| r == u8::MAX) {
            return Err(Error::InvalidScheme(format!("pair ({},{}) is in no relation", pos / n, pos % n)));
        }
        let per_pair = par::map_range(size * size, |ij| -> Result<Vec<u64>> {
            let (i, j) = (ij / size, ij % size);
            let mut coeff: Vec<Option<u64>> = vec![None; size];
            for u in 0..n {
                let ru = &self.relations[i][u];
                for v in 0..n {
                    // (A_i A_j)[u][v] = |R_i(u) ∩ R_j(v)| by symmetry of A_j
                    let c = ru.intersection_count(&self.relations[j][v]) as u64;
                    let k = table[u * n + v] as usize;
                    match coeff[k] {
                        None => coeff[k] = Some(c),
                        Some(x) if x != c => {
                            return Err(Error::Inconsistent(format!(
                                "(A_{i} A_{j})[{u}][{v}] = {c} but another entry over R_{k} is {x}"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            Ok(coeff.into_iter().map(|c| c.unwrap_or(0)).collect())
        });
        let mut p = Vec::with_capacity(size * size * size);
        for row in per_pair {
            p.extend(row?);
        }
        Ok(IntersectionTensor { d: size - 1, p })
    }
}

/// Structure constants `p_ij^k` of a symmetric scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    d: usize,
    p: Vec<u64>,
}

impl IntersectionTensor {
    /// Builds a tensor from a `(d+1)^3` array indexed `[i][j][k]`.
    pub fn from_nested(p: &[Vec<Vec<u64>>]) -> Result<Self> {
        let size = p.len();
        if size == 0 || p.iter().any(|r| r.len() != size || r.iter().any(|c| c.len() != size)) {
            return Err(Error::InvalidScheme("intersection tensor must be cubic".into()));
        }
        Ok(IntersectionTensor { d: size - 1, p: p.iter().flatten().flatten().copied().collect() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let s = self.d + 1;
        self.p[(i * s + j) * s + k]
    }

    /// `k_i = p_ii^0`.
    pub fn valency(&self, i: usize) -> u64 {
        self.get(i, i, 0)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u64>>> {
        let s = self.d + 1;
        (0..s).map(|i| (0..s).map(|j| (0..s).map(|k| self.get(i, j, k)).collect()).collect()).collect()
    }

    /// Row `p_ii^0..p_ii^d`.
    pub fn diagonal_row(&self, i: usize) -> Vec<u64> {
        (0..=self.d).map(|k| self.get(i, i, k)).collect()
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&x| x > self.d) {
            Some(&index) => Err(Error::IndexOutOfRange { index, bound: self.d + 1 }),
            None => Ok(()),
        }
    }

    /// First `(x, y, k, p_xy^k)` with `x, y ∈ indices` not divisible by `m`.
    pub fn first_non_divisible(&self, indices: &[usize], m: u32) -> Result<Option<(usize, usize, usize, u64)>> {
        self.check_indices(indices)?;
        // Squares first, then mixed products.
        let diagonal = indices.iter().map(|&x| (x, x));
        let mixed = indices.iter().flat_map(|&x| indices.iter().filter(move |&&y| y != x).map(move |&y| (x, y)));
        for (x, y) in diagonal.chain(mixed) {
            for k in 0..=self.d {
                let v = self.get(x, y, k);
                if v % m as u64 != 0 {
                    return Ok(Some((x, y, k, v)));
                }
            }
        }
        Ok(None)
    }

    /// Whether `p` divides `p_xy^k` for all `x, y ∈ indices` and every `k`.
    pub fn divisibility_profile(&self, indices: &[usize], p: u32) -> Result<bool> {
        crate::algebra::check_prime(p)?;
        Ok(self.first_non_divisible(indices, p)?.is_none())
    }

    /// Like [`Self::first_non_divisible`] but as an error naming the failing number.
    pub fn require_divisible(&self, indices: &[usize], m: u32) -> Result<()> {
        crate::algebra::check_modulus(m)?;
        match self.first_non_divisible(indices, m)? {
            None => Ok(()),
            Some((x, y, k, value)) => Err(Error::Divisibility { x, y, k, value, modulus: m }),
        }
    }
}

use alloc::vec::Vec;

use super::Mat;
use crate::bitset::BitSet;

/// Bit-packed matrix over GF(2), one [`BitSet`] per row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitSet>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: (0..rows).map(|_| BitSet::new(cols)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitSet>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { cols, rows }
    }

    pub fn from_mat(m: &Mat) -> Self {
        let rows = (0..m.rows())
            .map(|r| {
                let mut s = BitSet::new(m.cols());
                for (c, &v) in m.row(r).iter().enumerate() {
                    if v & 1 == 1 {
                        s.insert(c);
                    }
                }
                s
            })
            .collect();
        BitMatrix { cols: m.cols(), rows }
    }

    pub fn to_mat(&self) -> Mat {
        let mut data = alloc::vec![0u32; self.rows.len() * self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter() {
                data[r * self.cols + c] = 1;
            }
        }
        Mat::from_raw(self.rows.len(), self.cols, 2, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &BitSet {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitSet::new(other.cols);
                for k in row.iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix { cols: other.cols, rows }
    }

    /// In-place reduced row-echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows.len() {
                break;
            }
            let Some(p) = (rank..self.rows.len()).find(|&r| self.rows[r].contains(c)) else {
                continue;
            };
            self.rows.swap(rank, p);
            let (head, tail) = self.rows.split_at_mut(rank);
            let (pivot, rest) = tail.split_first_mut().unwrap();
            for r in head.iter_mut().chain(rest.iter_mut()) {
                if r.contains(c) {
                    r.xor_assign(pivot);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

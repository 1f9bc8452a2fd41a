use alloc::vec::Vec;

use super::{check_prime, inv_mod, BitMatrix, Mat};
use crate::Result;

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The nonzero rows: a canonical basis of the row space.
    pub fn basis(&self) -> Mat {
        self.matrix.row_block(0, self.rank)
    }
}

impl Mat {
    /// Reduced row-echelon form over a prime field.
    ///
    /// Columns are scanned left to right and the pivot row is the first row
    /// at or below the current rank with a nonzero entry, so the output is
    /// stable across runs (it is also the unique RREF of the row space).
    pub fn rref(&self) -> Result<Rref> {
        check_prime(self.modulus())?;
        if self.modulus() == 2 {
            let mut b = BitMatrix::from_mat(self);
            let pivots = b.rref_in_place();
            return Ok(Rref { matrix: b.to_mat(), rank: pivots.len(), pivots });
        }
        let p = self.modulus();
        let mut m = self.clone();
        let (rows, cols) = (m.rows(), m.cols());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            swap_rows(&mut m, rank, piv);
            let inv = inv_mod(m.get(rank, c), p).expect("nonzero element of a prime field") as u64;
            for x in m.row_mut(rank) {
                *x = ((*x as u64 * inv) % p as u64) as u32;
            }
            let pivot_row: Vec<u32> = m.row(rank).to_vec();
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = m.get(r, c);
                if f == 0 {
                    continue;
                }
                let neg = (p - f) as u64;
                for (x, &y) in m.row_mut(r).iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + neg * y as u64) % p as u64) as u32;
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Ok(Rref { matrix: m, rank, pivots })
    }
}

pub(crate) fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols();
    for c in 0..cols {
        let (x, y) = (m.get(a, c), m.get(b, c));
        m.row_mut(a)[c] = y;
        m.row_mut(b)[c] = x;
    }
}

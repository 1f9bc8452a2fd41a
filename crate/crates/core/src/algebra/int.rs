use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Mat;
use crate::{Error, Result};

/// Dense integer matrix (exact arithmetic, no reduction).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMat { rows, cols, data }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch { op: "from_rows", left: (rows.len(), cols), right: (rows.len(), 0) });
        }
        Ok(Self::from_fn(rows.len(), cols, |r, c| rows[r].as_ref()[c]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "int mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, &x) in self.row(r).iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (d, &y) in dst.iter_mut().zip(other.row(k)) {
                    *d += x * y;
                }
            }
        }
        Ok(out)
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &IntMat, c: i64) -> Result<IntMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "int add",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + c * b).collect();
        Ok(IntMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn to_mod(&self, modulus: u32) -> Result<Mat> {
        Mat::from_fn(self.rows, self.cols, modulus, |r, c| self.get(r, c))
    }
}

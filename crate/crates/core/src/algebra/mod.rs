//! Exact linear algebra over prime fields `F_p` and residue rings `Z_m`.
//!
//! [`Mat`] is a dense row-major matrix of residues sharing one modulus. The
//! modulus-2 paths (products, row reduction) run on bit-packed rows; every
//! other modulus uses plain `u32` residues. Results never depend on which
//! representation was used.
//!
//! [`IntMat`] holds exact integer matrices (adjacency and quotient matrices
//! before reduction).

mod gf2;
mod int;
mod rref;
mod smith;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use gf2::BitMatrix;
pub use int::IntMat;
pub use rref::Rref;
pub use smith::SmithForm;

use crate::{Error, Result};

/// Largest supported modulus; keeps every product inside `u64` accumulators.
pub const MAX_MODULUS: u32 = u16::MAX as u32;

pub fn is_prime(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u32, m: u32) -> Option<u32> {
    let (g, s, _) = ext_gcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i64) as u32)
}

pub(crate) fn check_modulus(m: u32) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidModulus(m));
    }
    Ok(())
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    check_modulus(p)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// A residue modulo `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    value: u32,
    modulus: u32,
}

impl Scalar {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Scalar { value: value.rem_euclid(modulus as i64) as u32, modulus })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        self.same(other)?;
        Ok(Scalar { value: (self.value + other.value) % self.modulus, modulus: self.modulus })
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        self.same(other)?;
        let v = (self.value as u64 * other.value as u64) % self.modulus as u64;
        Ok(Scalar { value: v as u32, modulus: self.modulus })
    }

    pub fn neg(self) -> Scalar {
        Scalar { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn inverse(self) -> Option<Scalar> {
        inv_mod(self.value, self.modulus).map(|value| Scalar { value, modulus: self.modulus })
    }

    fn same(self, other: Scalar) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense matrix over `Z_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} mod {}", self.rows, self.cols, self.modulus)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Mat { rows, cols, modulus, data: vec![0; rows * cols] })
    }

    pub fn identity(n: usize, modulus: u32) -> Result<Self> {
        let mut m = Self::zeros(n, n, modulus)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        modulus: u32,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c).rem_euclid(m) as u32);
            }
        }
        Ok(Mat { rows, cols, modulus, data })
    }

    /// Builds a matrix from integer rows, reducing each entry mod `modulus`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], modulus: u32) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (rows.len(), cols),
                right: (rows.len(), 0),
            });
        }
        Self::from_fn(rows.len(), cols, modulus, |r, c| rows[r].as_ref()[c])
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, modulus: u32, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < modulus));
        Mat { rows, cols, modulus, data }
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
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn scalar(&self, r: usize, c: usize) -> Scalar {
        Scalar { value: self.get(r, c), modulus: self.modulus }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v.rem_euclid(self.modulus as i64) as u32;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat { rows: self.cols, cols: self.rows, modulus: self.modulus, data: vec![0; self.data.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other, "add")?;
        let m = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % m).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, modulus: self.modulus, data })
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Mat, c: u32) -> Result<Mat> {
        self.check_same_shape(other, "add_scaled")?;
        let m = self.modulus as u64;
        let c = c as u64 % m;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u64 + c * b as u64) % m) as u32)
            .collect();
        Ok(Mat { rows: self.rows, cols: self.cols, modulus: self.modulus, data })
    }

    pub fn scale(&self, c: u32) -> Mat {
        let m = self.modulus as u64;
        let c = c as u64 % m;
        let data = self.data.iter().map(|&a| ((a as u64 * c) % m) as u32).collect();
        Mat { rows: self.rows, cols: self.cols, modulus: self.modulus, data }
    }

    /// Matrix product reduced mod m.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        mat_mul(self, other)
    }

    /// `self · selfᵀ`.
    pub fn gram(&self) -> Mat {
        gram(self)
    }

    /// Rows `r0..r1` as a new matrix.
    pub fn row_block(&self, r0: usize, r1: usize) -> Mat {
        Mat {
            rows: r1 - r0,
            cols: self.cols,
            modulus: self.modulus,
            data: self.data[r0 * self.cols..r1 * self.cols].to_vec(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, modulus: self.modulus, data })
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Mat { rows: self.rows, cols: cols.len(), modulus: self.modulus, data }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.rank)
    }

    /// Same entries, different modulus (entries re-reduced).
    pub fn reduce_to(&self, modulus: u32) -> Result<Mat> {
        check_modulus(modulus)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            modulus,
            data: self.data.iter().map(|&v| v % modulus).collect(),
        })
    }
}

/// Standard product `a·b` reduced mod m.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch { left: a.modulus, right: b.modulus });
    }
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { op: "mat_mul", left: (a.rows, a.cols), right: (b.rows, b.cols) });
    }
    if a.modulus == 2 {
        let pa = BitMatrix::from_mat(a);
        let pb = BitMatrix::from_mat(b);
        return Ok(pa.mul(&pb).to_mat());
    }
    let m = a.modulus as u64;
    let mut out = vec![0u32; a.rows * b.cols];
    let mut acc = vec![0u64; b.cols];
    for r in 0..a.rows {
        acc.iter_mut().for_each(|x| *x = 0);
        for (k, &x) in a.row(r).iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc.iter_mut().zip(b.row(k)) {
                // Residues are below 2^16 so the sum stays far from overflow.
                *slot += x * y as u64;
            }
        }
        for (o, &s) in out[r * b.cols..(r + 1) * b.cols].iter_mut().zip(&acc) {
            *o = (s % m) as u32;
        }
    }
    Ok(Mat { rows: a.rows, cols: b.cols, modulus: a.modulus, data: out })
}

/// `a·aᵀ` reduced mod m; always symmetric.
pub fn gram(a: &Mat) -> Mat {
    let n = a.rows;
    let m = a.modulus as u64;
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in i..n {
            let s: u64 = a.row(i).iter().zip(a.row(j)).map(|(&x, &y)| x as u64 * y as u64).sum();
            let v = (s % m) as u32;
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    Mat { rows: n, cols: n, modulus: a.modulus, data: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&m| is_prime(m)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn scalar_arithmetic() {
        let a = Scalar::new(-1, 5).unwrap();
        assert_eq!(a.value(), 4);
        let b = Scalar::new(3, 5).unwrap();
        assert_eq!(a.mul(b).unwrap().value(), 2);
        assert_eq!(a.add(b).unwrap().value(), 2);
        assert_eq!(b.inverse().unwrap().value(), 2);
        assert!(Scalar::new(2, 4).unwrap().inverse().is_none());
        assert!(a.add(Scalar::new(1, 7).unwrap()).is_err());
        assert!(Scalar::new(1, 1).is_err());
    }

    #[test]
    fn identity_times_a() {
        for m in [2, 3, 4, 6, 7] {
            let a = Mat::from_fn(3, 4, m, |r, c| (r * 7 + c * 3) as i64).unwrap();
            let i = Mat::identity(3, m).unwrap();
            assert_eq!(mat_mul(&i, &a).unwrap(), a);
        }
    }

    #[test]
    fn char_two_cancellation() {
        let j = Mat::from_rows(&[[1, 1], [1, 1]], 2).unwrap();
        assert!(mat_mul(&j, &j).unwrap().is_zero());
    }

    #[test]
    fn mul_errors() {
        let a = Mat::zeros(2, 3, 3).unwrap();
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch { .. })));
        let b = Mat::zeros(3, 2, 5).unwrap();
        assert!(matches!(mat_mul(&a, &b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn gram_of_all_ones_row() {
        for n in [2, 4, 10] {
            let a = Mat::from_fn(1, n, 2, |_, _| 1).unwrap();
            assert!(gram(&a).is_zero());
        }
        let odd = Mat::from_fn(1, 3, 2, |_, _| 1).unwrap();
        assert_eq!(gram(&odd).get(0, 0), 1);
    }
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{ext_gcd, gcd, Mat};

/// Smith normal form over `Z_m`: `left · A · right = diag(diagonal)`.
///
/// Diagonal entries are divisors of `m` forming a divisibility chain, with `0`
/// standing for the zero ideal (an entry that vanishes mod m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub modulus: u32,
    pub left: Mat,
    pub right: Mat,
    pub diagonal: Vec<u32>,
}

impl SmithForm {
    /// Cyclic summands of the row module as `(order, multiplicity)`, largest
    /// order first. Over `Z_4` this is the `4^{k1} 2^{k2}` type.
    pub fn module_type(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &g in &self.diagonal {
            if g == 0 {
                continue;
            }
            let order = self.modulus / g;
            if order == 1 {
                continue;
            }
            match out.iter_mut().find(|(o, _)| *o == order) {
                Some(slot) => slot.1 += 1,
                None => out.push((order, 1)),
            }
        }
        out.sort_by_key(|e| core::cmp::Reverse(e.0));
        out
    }

    /// Number of unit elementary divisors (the free part over `Z_m`).
    pub fn free_rank(&self) -> usize {
        self.diagonal.iter().filter(|&&g| g == 1).count()
    }

    /// Size of the row module, `∏ m/g`.
    pub fn module_size(&self) -> u128 {
        self.module_type().iter().fold(1u128, |acc, &(o, c)| acc * (o as u128).pow(c as u32))
    }

    /// Renders the type as e.g. `4^2 2^1` (or `0` for the zero module).
    pub fn type_string(&self) -> String {
        let t = self.module_type();
        if t.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (o, c)) in t.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{o}^{c}");
        }
        s
    }
}

struct Work {
    m: i64,
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

impl Work {
    fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.m)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// rows (i, j) <- (s·ri + q·rj, x·ri + y·rj)
    fn combine_rows(&mut self, i: usize, j: usize, s: i64, q: i64, x: i64, y: i64) {
        let m = self.m;
        for mat in [&mut self.a, &mut self.u] {
            for c in 0..mat[i].len() {
                let (ri, rj) = (mat[i][c], mat[j][c]);
                mat[i][c] = (s * ri + q * rj).rem_euclid(m);
                mat[j][c] = (x * ri + y * rj).rem_euclid(m);
            }
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, s: i64, q: i64, x: i64, y: i64) {
        let m = self.m;
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let (ci, cj) = (row[i], row[j]);
                row[i] = (s * ci + q * cj).rem_euclid(m);
                row[j] = (x * ci + y * cj).rem_euclid(m);
            }
        }
    }

    fn ideal(&self, x: i64) -> i64 {
        gcd(x as u64, self.m as u64) as i64
    }

    /// A unit `w` with `x·w ≡ gcd(x, m)`.
    fn normalizing_unit(&self, x: i64) -> i64 {
        let g = self.ideal(x);
        let (xr, mr) = (x / g, self.m / g);
        let base = if mr == 1 { 1 } else { ext_gcd(xr, mr).1.rem_euclid(mr) };
        (0..g)
            .map(|k| base + k * mr)
            .find(|&w| gcd(w as u64, self.m as u64) == 1)
            .expect("a lift of a unit mod m/g is a unit mod m")
    }
}

impl Mat {
    /// Smith normal form over `Z_m` (any modulus ≥ 2).
    pub fn smith_form(&self) -> SmithForm {
        let (rows, cols) = (self.rows(), self.cols());
        let m = self.modulus() as i64;
        let mut w = Work {
            m,
            a: (0..rows).map(|r| self.row(r).iter().map(|&x| x as i64).collect()).collect(),
            u: (0..rows).map(|r| (0..rows).map(|c| (r == c) as i64).collect()).collect(),
            v: (0..cols).map(|r| (0..cols).map(|c| (r == c) as i64).collect()).collect(),
        };
        let mut diagonal = Vec::new();
        let steps = rows.min(cols);
        'outer: for t in 0..steps {
            loop {
                let mut best: Option<(i64, usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = w.a[i][j];
                        if x != 0 {
                            let g = w.ideal(x);
                            if best.is_none_or(|(bg, _, _)| g < bg) {
                                best = Some((g, i, j));
                            }
                        }
                    }
                }
                let Some((g, bi, bj)) = best else {
                    diagonal.extend(core::iter::repeat_n(0, steps - t));
                    break 'outer;
                };
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                let unit = w.normalizing_unit(w.a[t][t]);
                w.combine_rows(t, t, unit, 0, unit, 0);
                debug_assert_eq!(w.a[t][t], g);

                let mut dirty = false;
                for i in t + 1..rows {
                    let y = w.a[i][t];
                    if y == 0 {
                        continue;
                    }
                    if y % g == 0 {
                        w.combine_rows(i, t, 1, -(y / g), 0, 1);
                        // combine_rows wrote row t back unchanged (0·ri + 1·rt)
                    } else {
                        let (h, s, q) = ext_gcd(g, y);
                        w.combine_rows(t, i, s, q, -(y / h), g / h);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                for j in t + 1..cols {
                    let y = w.a[t][j];
                    if y == 0 {
                        continue;
                    }
                    if y % g == 0 {
                        w.combine_cols(j, t, 1, -(y / g), 0, 1);
                    } else {
                        let (h, s, q) = ext_gcd(g, y);
                        w.combine_cols(t, j, s, q, -(y / h), g / h);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % g != 0));
                if let Some(i) = offender {
                    w.combine_rows(t, i, 1, 1, 0, 1);
                    continue;
                }
                diagonal.push(w.reduce(g) as u32);
                break;
            }
        }
        let modulus = self.modulus();
        let to_mat = |x: &Vec<Vec<i64>>, n: usize, k: usize| {
            Mat::from_fn(n, k, modulus, |r, c| x[r][c]).expect("modulus already validated")
        };
        SmithForm { modulus, left: to_mat(&w.u, rows, rows), right: to_mat(&w.v, cols, cols), diagonal }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_decomposition(a: &Mat) -> SmithForm {
        let s = a.smith_form();
        let d = s.left.mul(a).unwrap().mul(&s.right).unwrap();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let expect = if r == c { s.diagonal[r] % a.modulus() } else { 0 };
                assert_eq!(d.get(r, c), expect, "entry ({r},{c}) of U A V");
            }
        }
        // U and V invertible: their determinants are units, checked via Smith of U being all ones
        for w in s.diagonal.windows(2) {
            let (x, y) = (w[0], w[1]);
            assert!(y == 0 || (x != 0 && y % x == 0), "divisibility chain {x} | {y}");
        }
        s
    }

    #[test]
    fn identity_has_unit_divisors() {
        let s = check_decomposition(&Mat::identity(4, 6).unwrap());
        assert_eq!(s.diagonal, vec![1, 1, 1, 1]);
        assert_eq!(s.free_rank(), 4);
    }

    #[test]
    fn zero_matrix_has_zero_divisors() {
        let s = check_decomposition(&Mat::zeros(3, 5, 4).unwrap());
        assert_eq!(s.diagonal, vec![0, 0, 0]);
        assert_eq!(s.free_rank(), 0);
        assert_eq!(s.type_string(), "0");
    }

    #[test]
    fn z4_type() {
        // diag(2, 1) over Z_4: one free summand, one copy of Z_2.
        let a = Mat::from_rows(&[[2, 0], [0, 1]], 4).unwrap();
        let s = check_decomposition(&a);
        assert_eq!(s.diagonal, vec![1, 2]);
        assert_eq!(s.module_type(), vec![(4, 1), (2, 1)]);
        assert_eq!(s.type_string(), "4^1 2^1");
        assert_eq!(s.module_size(), 8);
    }

    #[test]
    fn composite_modulus_chain() {
        // diag(2, 3) over Z_6 is diag(1, 0): Z_3 ⊕ Z_2 ≅ Z_6.
        let a = Mat::from_rows(&[[2, 0], [0, 3]], 6).unwrap();
        let s = check_decomposition(&a);
        assert_eq!(s.diagonal, vec![1, 0]);
    }

    proptest! {
        #[test]
        fn decomposition_holds(m in prop_oneof![Just(4u32), Just(6), Just(8), Just(9), Just(12)],
                               r in 1usize..6, c in 1usize..6,
                               seed in proptest::collection::vec(0i64..1000, 36)) {
            let a = Mat::from_fn(r, c, m, |i, j| seed[i * 6 + j]).unwrap();
            let s = check_decomposition(&a);
            // module size equals the number of distinct Z_m combinations of rows
            if (m as u128).pow(r as u32) <= 4096 {
                let mut seen = alloc::collections::BTreeSet::new();
                let total = (m as usize).pow(r as u32);
                for idx in 0..total {
                    let mut coef = idx;
                    let mut word = alloc::vec![0u32; c];
                    for i in 0..r {
                        let x = (coef % m as usize) as u32;
                        coef /= m as usize;
                        for (wj, &aj) in word.iter_mut().zip(a.row(i)) {
                            *wj = (*wj + x * aj) % m;
                        }
                    }
                    seen.insert(word);
                }
                prop_assert_eq!(seen.len() as u128, s.module_size());
            }
        }
    }
}

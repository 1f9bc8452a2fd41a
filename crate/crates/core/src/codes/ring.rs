use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{check_modulus, Mat, SmithForm};
use crate::partitions::QuotientSystem;
use crate::schemes::IntersectionTensor;
use crate::{Error, Result};

/// Largest module enumerated for its minimum Hamming weight.
pub const RING_ENUMERATION_CAP: u128 = 1 << 24;

/// A code over `Z_m`: the row module of `generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCode {
    generator: Mat,
    smith: SmithForm,
    /// Independent cyclic generators with their additive orders.
    basis: Vec<(Vec<u32>, u32)>,
}

impl RingCode {
    pub fn new(generator: Mat) -> Self {
        let smith = generator.smith_form();
        let m = generator.modulus();
        let ua = smith.left.mul(&generator).expect("shapes agree");
        let basis = smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, &g)| g != 0 && g != m)
            .map(|(i, &g)| (ua.row(i).to_vec(), m / g))
            .filter(|(_, order)| *order > 1)
            .collect();
        RingCode { generator, smith, basis }
    }

    pub fn m(&self) -> u32 {
        self.generator.modulus()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    pub fn basis(&self) -> &[(Vec<u32>, u32)] {
        &self.basis
    }

    /// Module type such as `4^3 2^1`.
    pub fn type_string(&self) -> String {
        self.smith.type_string()
    }

    pub fn size(&self) -> u128 {
        self.smith.module_size()
    }

    pub fn self_orthogonal(&self) -> bool {
        self.generator.gram().is_zero()
    }

    /// Least nonzero Hamming weight, by enumerating `Σ a_i g_i` over the
    /// cyclic basis. `None` for the zero module.
    pub fn minimum_weight(&self) -> Result<Option<usize>> {
        if self.size() > RING_ENUMERATION_CAP {
            return Err(Error::TooLarge { what: "ring code enumeration", required: self.size(), cap: RING_ENUMERATION_CAP });
        }
        let m = self.m();
        let n = self.n();
        let mut coeff = vec![0u32; self.basis.len()];
        let mut word = vec![0u32; n];
        let mut best: Option<usize> = None;
        // odometer over the coefficients; each step adds one generator
        loop {
            let mut i = 0;
            loop {
                if i == coeff.len() {
                    return Ok(best);
                }
                let (g, order) = &self.basis[i];
                for (w, &x) in word.iter_mut().zip(g) {
                    *w = (*w + x) % m;
                }
                coeff[i] += 1;
                if coeff[i] < *order {
                    break;
                }
                // order·g = 0, so the word is back where this digit started
                coeff[i] = 0;
                i += 1;
            }
            let wt = word.iter().filter(|&&x| x != 0).count();
            if wt > 0 && best.is_none_or(|b| wt < b) {
                best = Some(wt);
            }
        }
    }
}

/// Row module of `M_i` mod `m` for a uniform equitable partition, under the
/// hypothesis `m | p_ii^k` for every `k`.
pub fn build_ring_code(qs: &QuotientSystem, t: &IntersectionTensor, i: usize, m: u32) -> Result<RingCode> {
    check_modulus(m)?;
    if i >= qs.quotients().len() {
        return Err(Error::IndexOutOfRange { index: i, bound: qs.quotients().len() });
    }
    qs.partition().require_uniform()?;
    t.require_divisible(&[i], m)?;
    let code = RingCode::new(qs.quotient(i).to_mod(m)?);
    if !code.self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Mat) -> (usize, Option<usize>) {
        let (r, n, m) = (g.rows(), g.cols(), g.modulus());
        let mut seen = alloc::collections::BTreeSet::new();
        for idx in 0..(m as usize).pow(r as u32) {
            let mut x = idx;
            let mut word = vec![0u32; n];
            for i in 0..r {
                let a = (x % m as usize) as u32;
                x /= m as usize;
                for (w, &v) in word.iter_mut().zip(g.row(i)) {
                    *w = (*w + a * v) % m;
                }
            }
            seen.insert(word);
        }
        let min = seen.iter().map(|w| w.iter().filter(|&&x| x != 0).count()).filter(|&w| w > 0).min();
        (seen.len(), min)
    }

    #[test]
    fn z4_module() {
        let g = Mat::from_rows(&[[1, 1, 1, 1, 0], [2, 2, 0, 0, 0], [0, 2, 0, 2, 0]], 4).unwrap();
        let c = RingCode::new(g.clone());
        let (size, min) = brute_force(&g);
        assert_eq!(c.size(), size as u128);
        assert_eq!(c.minimum_weight().unwrap(), min);
        assert_eq!(c.type_string(), "4^1 2^2");
    }

    #[test]
    fn self_orthogonality_over_z4() {
        // (1,1,1,1) has norm 4 ≡ 0 and (2,2,0,0) is orthogonal to it
        let g = Mat::from_rows(&[[1, 1, 1, 1], [2, 2, 0, 0]], 4).unwrap();
        assert!(RingCode::new(g).self_orthogonal());
        let g = Mat::from_rows(&[[1, 1, 0, 0]], 4).unwrap();
        assert!(!RingCode::new(g).self_orthogonal());
    }

    #[test]
    fn zero_module() {
        let c = RingCode::new(Mat::zeros(2, 3, 6).unwrap());
        assert_eq!(c.size(), 1);
        assert_eq!(c.minimum_weight().unwrap(), None);
    }

    #[test]
    fn agrees_with_brute_force_on_z6() {
        let g = Mat::from_rows(&[[2, 3, 0, 1], [4, 0, 3, 5], [0, 3, 3, 0]], 6).unwrap();
        let c = RingCode::new(g.clone());
        let (size, min) = brute_force(&g);
        assert_eq!(c.size(), size as u128);
        assert_eq!(c.minimum_weight().unwrap(), min);
    }
}

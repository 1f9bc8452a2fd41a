use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc.into()
}

/// Weight distribution of `C` from that of its dual `C⊥` (of dimension
/// `dual_k`) via Krawtchouk polynomials:
/// `A_j = q^{-dual_k} Σ_i B_i K_j(i)`.
pub fn macwilliams_transform(dual: &[u128], n: usize, q: u32, dual_k: usize) -> Result<Vec<u128>> {
    if dual.len() != n + 1 {
        return Err(Error::DimensionMismatch { op: "macwilliams", left: (dual.len(), 1), right: (n + 1, 1) });
    }
    let qm1 = BigInt::from(q - 1);
    let powers: Vec<BigInt> = (0..=n).map(|e| num_traits::pow(qm1.clone(), e)).collect();
    let scale = num_traits::pow(BigInt::from(q), dual_k);
    let mut out = vec![0u128; n + 1];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut total = BigInt::zero();
        for (i, &b) in dual.iter().enumerate().filter(|(_, &b)| b != 0) {
            // K_j(i) = Σ_s (-1)^s (q-1)^{j-s} C(i,s) C(n-i,j-s)
            let mut kj = BigInt::zero();
            for s in 0..=j.min(i) {
                if j - s > n - i {
                    continue;
                }
                let term = &powers[j - s] * binomial(i, s) * binomial(n - i, j - s);
                if s % 2 == 0 {
                    kj += term;
                } else {
                    kj -= term;
                }
            }
            total += kj * BigInt::from(b);
        }
        if !(&total % &scale).is_zero() {
            return Err(Error::Inconsistent("MacWilliams transform is not integral".into()));
        }
        *slot = (total / &scale)
            .to_u128()
            .ok_or_else(|| Error::Inconsistent("MacWilliams transform gave a negative count".into()))?;
    }
    Ok(out)
}

//! Packed codeword arithmetic and the two enumeration engines.
//!
//! GF(2) vectors are plain bit rows. GF(3) vectors use two bit planes, one
//! marking entries equal to 1 and one marking entries equal to 2. Other
//! primes store one residue per `u64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Mat;
use crate::par;

pub(crate) trait Kernel: Sync {
    fn stride(&self) -> usize;
    fn p(&self) -> u32;
    fn pack(&self, row: &[u32], out: &mut [u64]);
    /// `dst = a + c·b`
    fn sum_into(&self, dst: &mut [u64], a: &[u64], b: &[u64], c: u32);
    fn weight(&self, v: &[u64]) -> u32;
    /// Support as a bit row of `words_for(n)` words.
    fn support_bits(&self, v: &[u64], out: &mut [u64]);

    fn pack_rows(&self, m: &Mat) -> Vec<u64> {
        let s = self.stride();
        let mut out = vec![0u64; m.rows() * s];
        for r in 0..m.rows() {
            self.pack(m.row(r), &mut out[r * s..(r + 1) * s]);
        }
        out
    }

    fn add_assign(&self, dst: &mut [u64], b: &[u64], c: u32) {
        let a = dst.to_vec();
        self.sum_into(dst, &a, b, c);
    }
}

pub(crate) struct Gf2 {
    pub(crate) words: usize,
}

pub(crate) struct Gf3 {
    pub(crate) words: usize,
}

pub(crate) struct GfP {
    pub(crate) n: usize,
    pub(crate) p: u32,
}

impl Kernel for Gf2 {
    fn stride(&self) -> usize {
        self.words
    }

    fn p(&self) -> u32 {
        2
    }

    fn pack(&self, row: &[u32], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for (i, &x) in row.iter().enumerate() {
            if x & 1 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
    }

    #[inline]
    fn sum_into(&self, dst: &mut [u64], a: &[u64], b: &[u64], _c: u32) {
        for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
            *d = x ^ y;
        }
    }

    #[inline]
    fn weight(&self, v: &[u64]) -> u32 {
        v.iter().map(|w| w.count_ones()).sum()
    }

    fn add_assign(&self, dst: &mut [u64], b: &[u64], _c: u32) {
        for (d, &y) in dst.iter_mut().zip(b) {
            *d ^= y;
        }
    }

    fn support_bits(&self, v: &[u64], out: &mut [u64]) {
        out.copy_from_slice(v);
    }
}

impl Kernel for Gf3 {
    fn stride(&self) -> usize {
        2 * self.words
    }

    fn p(&self) -> u32 {
        3
    }

    fn pack(&self, row: &[u32], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for (i, &x) in row.iter().enumerate() {
            match x % 3 {
                1 => out[i / 64] |= 1 << (i % 64),
                2 => out[self.words + i / 64] |= 1 << (i % 64),
                _ => {}
            }
        }
    }

    #[inline]
    fn sum_into(&self, dst: &mut [u64], a: &[u64], b: &[u64], c: u32) {
        let w = self.words;
        let (d1, d2) = dst.split_at_mut(w);
        let (a1, a2) = a.split_at(w);
        // multiplying by 2 swaps the planes
        let (b1, b2) = if c == 2 { (&b[w..], &b[..w]) } else { b.split_at(w) };
        for i in 0..w {
            let (x1, x2, y1, y2) = (a1[i], a2[i], b1[i], b2[i]);
            let x0 = !(x1 | x2);
            let y0 = !(y1 | y2);
            d1[i] = (x1 & y0) | (x0 & y1) | (x2 & y2);
            d2[i] = (x2 & y0) | (x0 & y2) | (x1 & y1);
        }
    }

    #[inline]
    fn weight(&self, v: &[u64]) -> u32 {
        let (a, b) = v.split_at(self.words);
        a.iter().zip(b).map(|(x, y)| (x | y).count_ones()).sum()
    }

    fn support_bits(&self, v: &[u64], out: &mut [u64]) {
        let (a, b) = v.split_at(self.words);
        for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
            *o = x | y;
        }
    }
}

impl Kernel for GfP {
    fn stride(&self) -> usize {
        self.n
    }

    fn p(&self) -> u32 {
        self.p
    }

    fn pack(&self, row: &[u32], out: &mut [u64]) {
        for (o, &x) in out.iter_mut().zip(row) {
            *o = (x % self.p) as u64;
        }
    }

    #[inline]
    fn sum_into(&self, dst: &mut [u64], a: &[u64], b: &[u64], c: u32) {
        let p = self.p as u64;
        for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
            *d = (x + c as u64 * y) % p;
        }
    }

    #[inline]
    fn weight(&self, v: &[u64]) -> u32 {
        v.iter().filter(|&&x| x != 0).count() as u32
    }

    fn support_bits(&self, v: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for (i, _) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
            out[i / 64] |= 1 << (i % 64);
        }
    }
}

/// Runs `f` with the kernel suited to `p`.
macro_rules! with_kernel {
    ($p:expr, $n:expr, |$k:ident| $body:expr) => {{
        let (p, n): (u32, usize) = ($p, $n);
        match p {
            2 => {
                let $k = &$crate::codes::kernel::Gf2 { words: $crate::bitset::words_for(n) };
                $body
            }
            3 => {
                let $k = &$crate::codes::kernel::Gf3 { words: $crate::bitset::words_for(n) };
                $body
            }
            _ => {
                let $k = &$crate::codes::kernel::GfP { n, p };
                $body
            }
        }
    }};
}
pub(crate) use with_kernel;

/// Visits every codeword `Σ a_i g_i` once, in modular Gray-code order inside
/// each of several parallel chunks. `visit` gets the chunk state and a word.
pub(crate) fn enumerate<K: Kernel, S: Send>(
    kern: &K,
    rows: &[u64],
    k: usize,
    init: impl Fn() -> S + Sync + Send,
    visit: impl Fn(&mut S, &[u64]) + Sync + Send,
) -> Vec<S> {
    let s = kern.stride();
    let p = kern.p() as u64;
    // top digits fixed per chunk
    let mut top = 0;
    while top < k && p.pow(top as u32) < 256 {
        top += 1;
    }
    let low = k - top;
    let chunks = p.pow(top as u32) as usize;
    let steps = p.pow(low as u32);
    par::map_range(chunks, |t| {
        let mut state = init();
        // Gray digits of the counter t·p^low: g_i = b_i − b_{i+1}
        let mut digits = vec![0u64; k + 1];
        let mut x = t as u64;
        for d in digits.iter_mut().skip(low).take(top) {
            *d = x % p;
            x /= p;
        }
        let mut cur = vec![0u64; s];
        for i in 0..k {
            let g = (digits[i] + p - digits[i + 1]) % p;
            if g != 0 {
                kern.add_assign(&mut cur, &rows[i * s..(i + 1) * s], g as u32);
            }
        }
        visit(&mut state, &cur);
        for step in 1..steps {
            let mut j = 0;
            let mut y = step;
            while y % p == 0 {
                y /= p;
                j += 1;
            }
            kern.add_assign(&mut cur, &rows[j * s..(j + 1) * s], 1);
            visit(&mut state, &cur);
        }
        state
    })
}

/// Weight histogram over all `p^k` codewords.
pub(crate) fn weight_histogram<K: Kernel>(kern: &K, rows: &[u64], k: usize, n: usize) -> Vec<u128> {
    let parts = enumerate(kern, rows, k, || vec![0u64; n + 1], |h, w| h[kern.weight(w) as usize] += 1);
    let mut out = vec![0u128; n + 1];
    for h in parts {
        for (o, x) in out.iter_mut().zip(h) {
            *o += x as u128;
        }
    }
    out
}

/// Least nonzero weight by full enumeration.
pub(crate) fn min_weight_exhaustive<K: Kernel>(kern: &K, rows: &[u64], k: usize) -> Option<u32> {
    enumerate(kern, rows, k, || u32::MAX, |m, w| {
        let x = kern.weight(w);
        if x > 0 && x < *m {
            *m = x;
        }
    })
    .into_iter()
    .min()
    .filter(|&m| m != u32::MAX)
}

/// Least weight among combinations of exactly `w` rows (first coefficient 1).
pub(crate) fn min_weight_level<K: Kernel>(kern: &K, rows: &[u64], k: usize, w: usize) -> u32 {
    if w == 0 || w > k {
        return u32::MAX;
    }
    let s = kern.stride();
    let p = kern.p();
    par::map_range(k - w + 1, |r0| {
        let mut stack = vec![0u64; (w + 1) * s];
        stack[s..2 * s].copy_from_slice(&rows[r0 * s..(r0 + 1) * s]);
        let mut best = u32::MAX;
        if w == 1 {
            return kern.weight(&stack[s..2 * s]);
        }
        descend(kern, rows, k, w, p, 1, r0 + 1, &mut stack, &mut best);
        best
    })
    .into_iter()
    .min()
    .unwrap_or(u32::MAX)
}

#[allow(clippy::too_many_arguments)]
fn descend<K: Kernel>(
    kern: &K,
    rows: &[u64],
    k: usize,
    w: usize,
    p: u32,
    level: usize,
    start: usize,
    stack: &mut [u64],
    best: &mut u32,
) {
    let s = kern.stride();
    for r in start..=k - (w - level) {
        for c in 1..p {
            let (done, rest) = stack.split_at_mut((level + 1) * s);
            let prev = &done[level * s..(level + 1) * s];
            let next = &mut rest[..s];
            kern.sum_into(next, prev, &rows[r * s..(r + 1) * s], c);
            if level + 1 == w {
                let x = kern.weight(next);
                if x < *best {
                    *best = x;
                }
            } else {
                descend(kern, rows, k, w, p, level + 1, r + 1, stack, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sum(a: &[u32], b: &[u32], c: u32, p: u32) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + c * y) % p).collect()
    }

    proptest! {
        #[test]
        fn packed_arithmetic(p in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..150, seed in any::<u64>()) {
            let mut x = seed;
            let mut next = || { x ^= x << 13; x ^= x >> 7; x ^= x << 17; (x % p as u64) as u32 };
            let a: Vec<u32> = (0..n).map(|_| next()).collect();
            let b: Vec<u32> = (0..n).map(|_| next()).collect();
            let c = 1 + next() % (p - 1).max(1);
            let c = if c >= p { 1 } else { c };
            with_kernel!(p, n, |kern| {
                let s = kern.stride();
                let (mut pa, mut pb, mut pc) = (vec![0; s], vec![0; s], vec![0; s]);
                kern.pack(&a, &mut pa);
                kern.pack(&b, &mut pb);
                kern.sum_into(&mut pc, &pa, &pb, c);
                let want = naive_sum(&a, &b, c, p);
                let mut pw = vec![0; s];
                kern.pack(&want, &mut pw);
                prop_assert_eq!(&pc, &pw);
                prop_assert_eq!(kern.weight(&pc) as usize, want.iter().filter(|&&v| v != 0).count());
                let mut bits = vec![0; crate::bitset::words_for(n)];
                kern.support_bits(&pc, &mut bits);
                let set = crate::bitset::BitSet::from_indices(n, (0..n).filter(|&i| want[i] != 0));
                prop_assert_eq!(&bits[..], set.words());
                Ok::<(), TestCaseError>(())
            })?;
        }
    }

    #[test]
    fn gray_enumeration_visits_everything() {
        // the full space F_3^3 has weight histogram (1, 6, 12, 8)
        let id = Mat::identity(3, 3).unwrap();
        with_kernel!(3, 3, |kern| {
            let rows = kern.pack_rows(&id);
            assert_eq!(weight_histogram(kern, &rows, 3, 3), vec![1, 6, 12, 8]);
        });
        let id = Mat::identity(10, 2).unwrap();
        with_kernel!(2, 10, |kern| {
            let rows = kern.pack_rows(&id);
            let h = weight_histogram(kern, &rows, 10, 10);
            assert_eq!(h.iter().sum::<u128>(), 1024);
            assert_eq!(h[5], 252);
        });
    }
}

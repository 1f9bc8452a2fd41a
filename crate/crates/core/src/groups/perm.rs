use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::gcd;
use crate::{Error, Result};

/// A permutation of `{0..n-1}` stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {x} out of range for degree {n}")));
            }
            if core::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// Cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Perm {
        let mut images: Vec<u32> = (0..self.degree() as u32).collect();
        for c in self.cycles() {
            let l = c.len() as i64;
            let shift = e.rem_euclid(l) as usize;
            for (i, &x) in c.iter().enumerate() {
                images[x] = c[(i + shift) % c.len()] as u32;
            }
        }
        Perm { images }
    }
}

impl fmt::Display for Perm {
    /// Disjoint-cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{self}", self.degree())
    }
}

/// Parses cycle notation such as `(0,3)(1,2)` or an image list such as
/// `[1,0,3,2]` / `1 0 3 2`. Points omitted from cycles are fixed.
pub fn parse_perm(text: &str, n: usize) -> Result<Perm> {
    let t = text.trim();
    let err = |offset: usize, message: String| Error::Parse { offset, message };
    if t.starts_with('(') {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        let bytes = t.as_bytes();
        let base = text.len() - text.trim_start().len();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => {
                    let close = t[i..].find(')').ok_or_else(|| err(base + i, "unclosed cycle".into()))? + i;
                    let body = &t[i + 1..close];
                    let mut cycle = Vec::new();
                    let mut off = i + 1;
                    for tok in body.split([',', ' ']) {
                        if !tok.trim().is_empty() {
                            let v: usize =
                                tok.trim().parse().map_err(|_| err(base + off, format!("bad point `{}`", tok.trim())))?;
                            if v >= n {
                                return Err(Error::InvalidPermutation(format!("point {v} out of range for degree {n}")));
                            }
                            if core::mem::replace(&mut used[v], true) {
                                return Err(Error::InvalidPermutation(format!("point {v} repeated")));
                            }
                            cycle.push(v);
                        }
                        off += tok.len() + 1;
                    }
                    for (k, &v) in cycle.iter().enumerate() {
                        images[v] = cycle[(k + 1) % cycle.len()] as u32;
                    }
                    i = close + 1;
                }
                b' ' | b'\t' => i += 1,
                _ => return Err(err(base + i, format!("unexpected `{}`", bytes[i] as char))),
            }
        }
        Ok(Perm { images })
    } else {
        let body = t.trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split([',', ' ', '\t'])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| err(0, format!("bad image `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if images.len() != n {
            return Err(Error::DegreeMismatch { expected: n, found: images.len() });
        }
        Perm::from_images(images)
    }
}

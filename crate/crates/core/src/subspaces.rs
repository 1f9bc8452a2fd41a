//! Subspace codes from row spaces of a matrix algebra.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{check_prime, inv_mod, Mat};
use crate::par;
use crate::partitions::QuotientSystem;
use crate::schemes::IntersectionTensor;
use crate::{Error, Result};

/// Default number of algebra elements enumerated.
pub const ROW_SPACE_CAP: u128 = 1 << 26;

/// A subspace of `F_p^n`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Row space of `generator`.
    pub fn new(generator: &Mat) -> Result<Self> {
        Ok(Subspace { basis: generator.rref()?.basis() })
    }

    pub fn zero(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Subspace { basis: Mat::zeros(0, n, p)? })
    }

    pub fn full(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Subspace { basis: Mat::identity(n, p)? })
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn p(&self) -> u32 {
        self.basis.modulus()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// `U + W`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::new(&self.basis.vstack(&other.basis)?)
    }

    /// `U ∩ W` by the Zassenhaus algorithm: reduce `[U U; W 0]` and keep the
    /// right halves of rows whose left half vanishes.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        let n = self.ambient();
        if other.ambient() != n {
            return Err(mismatch(self, other));
        }
        let (a, b) = (self.dim(), other.dim());
        let block = Mat::from_fn(a + b, 2 * n, self.p(), |r, c| {
            let src = if r < a { self.basis.row(r) } else { other.basis.row(r - a) };
            if c < n {
                src[c] as i64
            } else if r < a {
                src[c - n] as i64
            } else {
                0
            }
        })?;
        let r = block.rref()?;
        let first = r.pivots.iter().position(|&c| c >= n).unwrap_or(r.rank);
        let right: Vec<usize> = (n..2 * n).collect();
        Subspace::new(&r.matrix.row_block(first, r.rank).select_columns(&right))
    }
}

fn mismatch(u: &Subspace, w: &Subspace) -> Error {
    Error::DimensionMismatch { op: "subspace", left: (u.dim(), u.ambient()), right: (w.dim(), w.ambient()) }
}

/// `d_s(U, W) = 2·dim(U + W) − dim U − dim W`.
pub fn subspace_distance(u: &Subspace, w: &Subspace) -> Result<usize> {
    if u.ambient() != w.ambient() || u.p() != w.p() {
        return Err(mismatch(u, w));
    }
    let sum = u.basis.vstack(&w.basis)?.rank()?;
    Ok(2 * sum - u.dim() - w.dim())
}

/// A linearly independent spanning set of an algebra of `t×t` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBasis {
    t: usize,
    p: u32,
    basis: Vec<Mat>,
}

impl AlgebraBasis {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Whether `m` is a linear combination of the basis.
    pub fn contains(&self, m: &Mat) -> bool {
        let mut e = Echelon::new(self.t * self.t, self.p);
        for b in &self.basis {
            e.insert(b.data().to_vec());
        }
        e.insert(m.data().to_vec()).is_none()
    }
}

/// Incremental echelon basis of flattened matrices.
struct Echelon {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
    len: usize,
}

impl Echelon {
    fn new(len: usize, p: u32) -> Self {
        Echelon { p, rows: Vec::new(), len }
    }

    /// Reduces `v`; if it is new, stores it and returns its reduced form.
    fn insert(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        debug_assert_eq!(v.len(), self.len);
        let p = self.p as u64;
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                let neg = p - f as u64;
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
        let pivot = v.iter().position(|&x| x != 0)?;
        let inv = inv_mod(v[pivot], self.p).expect("prime field") as u64;
        v.iter_mut().for_each(|x| *x = ((*x as u64 * inv) % p) as u32);
        self.rows.push((pivot, v.clone()));
        Some(v)
    }
}

/// Span of all nonempty products of the generators (the identity is not
/// adjoined). Grows the span by pairwise products until nothing new appears.
pub fn algebra_closure(gens: &[Mat]) -> Result<AlgebraBasis> {
    let first = gens.first().ok_or_else(|| Error::InvalidScheme(String::from("no generators")))?;
    let (t, p) = (first.rows(), first.modulus());
    check_prime(p)?;
    for g in gens {
        if g.rows() != t || g.cols() != t || g.modulus() != p {
            return Err(Error::DimensionMismatch { op: "algebra_closure", left: (t, t), right: (g.rows(), g.cols()) });
        }
    }
    let mut e = Echelon::new(t * t, p);
    let mut basis: Vec<Mat> = Vec::new();
    for g in gens {
        if e.insert(g.data().to_vec()).is_some() {
            basis.push(g.clone());
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let end = basis.len();
        let products: Vec<Mat> = (done..end)
            .flat_map(|i| (0..end).map(move |j| (i, j)))
            .flat_map(|(i, j)| [(i, j), (j, i)])
            .map(|(i, j)| basis[i].mul(&basis[j]).expect("same shape"))
            .collect();
        for m in products {
            if e.insert(m.data().to_vec()).is_some() {
                basis.push(m);
            }
        }
        done = end;
    }
    Ok(AlgebraBasis { t, p, basis })
}

/// A set of subspaces of `F_p^n`, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCode {
    n: usize,
    p: u32,
    codewords: Vec<Subspace>,
}

impl SubspaceCode {
    pub fn new(n: usize, p: u32, codewords: impl IntoIterator<Item = Subspace>) -> Result<Self> {
        check_prime(p)?;
        let set: BTreeSet<Subspace> = codewords.into_iter().collect();
        if let Some(bad) = set.iter().find(|s| s.ambient() != n || s.p() != p) {
            return Err(Error::DimensionMismatch { op: "subspace code", left: (n, n), right: (bad.dim(), bad.ambient()) });
        }
        Ok(SubspaceCode { n, p, codewords: set.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    /// Occurring dimensions, sorted.
    pub fn dimensions(&self) -> Vec<usize> {
        self.codewords.iter().map(Subspace::dim).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// `(n,#C,d,{K})_p`, with `-` for the distance when `#C < 2`.
    pub fn parameters(&self) -> String {
        let d = min_subspace_distance(self).map_or(String::from("-"), |d| format!("{d}"));
        let k: Vec<String> = self.dimensions().iter().map(|k| format!("{k}")).collect();
        format!("({},{},{},{{{}}})_{}", self.n, self.size(), d, k.join(","), self.p)
    }
}

impl fmt::Display for SubspaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parameters())
    }
}

/// Row spaces of every element of the algebra, the zero matrix included.
pub fn enumerate_row_spaces(ab: &AlgebraBasis, cap: u128) -> Result<SubspaceCode> {
    let (t, p) = (ab.t, ab.p);
    let dim = ab.dim();
    let required = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::TooLarge { what: "row-space enumeration", required, cap });
    }
    let pl = p as u64;
    let mut top = 0;
    while top < dim && pl.pow(top as u32) < 64 {
        top += 1;
    }
    let low = dim - top;
    let steps = pl.pow(low as u32);
    let elems: Vec<&[u32]> = ab.basis.iter().map(Mat::data).collect();
    let parts = par::map_range(pl.pow(top as u32) as usize, |chunk| {
        // fixed top coefficients, odometer over the low ones
        let mut cur = vec![0u32; t * t];
        let mut x = chunk as u64;
        for e in &elems[low..] {
            let a = x % pl;
            x /= pl;
            for (c, &v) in cur.iter_mut().zip(e.iter()) {
                *c = ((*c as u64 + a * v as u64) % pl) as u32;
            }
        }
        let mut seen = BTreeSet::new();
        let mut digits = vec![0u64; low];
        for step in 0..steps {
            if step > 0 {
                let mut i = 0;
                loop {
                    for (c, &v) in cur.iter_mut().zip(elems[i].iter()) {
                        *c = ((*c as u64 + v as u64) % pl) as u32;
                    }
                    digits[i] += 1;
                    if digits[i] < pl {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
            let m = Mat::from_raw(t, t, p, cur.clone());
            seen.insert(Subspace::new(&m).expect("prime field"));
        }
        seen
    });
    SubspaceCode::new(t, p, parts.into_iter().flatten())
}

/// Least distance between two distinct codewords.
pub fn min_subspace_distance(c: &SubspaceCode) -> Result<usize> {
    let m = c.size();
    if m < 2 {
        return Err(Error::TooFewCodewords);
    }
    let words = &c.codewords;
    let best = par::map_range(m, |i| {
        (i + 1..m).map(|j| subspace_distance(&words[i], &words[j]).expect("same ambient")).min().unwrap_or(usize::MAX)
    });
    Ok(best.into_iter().min().expect("at least two codewords"))
}

/// Every pair of codewords (a codeword with itself included) is orthogonal.
/// Checked as self-orthogonality of the sum of all codewords.
pub fn check_so_subspace(c: &SubspaceCode) -> bool {
    let mut stacked = match Mat::zeros(0, c.n, c.p) {
        Ok(m) => m,
        Err(_) => return false,
    };
    for w in &c.codewords {
        stacked = stacked.vstack(w.basis()).expect("same shape");
    }
    let span = stacked.rref().expect("prime field").basis();
    span.gram().is_zero()
}

/// Row spaces of the algebra generated by `{M_i : i ∈ I}` mod `p`.
pub fn build_subspace_code(
    qs: &QuotientSystem,
    t: &IntersectionTensor,
    indices: &[usize],
    p: u32,
    cap: u128,
) -> Result<SubspaceCode> {
    check_prime(p)?;
    if let Some(&i) = indices.iter().find(|&&i| i >= qs.quotients().len()) {
        return Err(Error::IndexOutOfRange { index: i, bound: qs.quotients().len() });
    }
    qs.partition().require_uniform()?;
    t.require_divisible(indices, p)?;
    let gens: Vec<Mat> = indices.iter().map(|&i| qs.quotient(i).to_mod(p)).collect::<Result<_>>()?;
    let ab = algebra_closure(&gens)?;
    let code = enumerate_row_spaces(&ab, cap)?;
    if !check_so_subspace(&code) {
        return Err(Error::NotSelfOrthogonal);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(rows: &[&[i64]], p: u32) -> Subspace {
        Subspace::new(&Mat::from_rows(rows, p).unwrap()).unwrap()
    }

    #[test]
    fn distances() {
        let a = space(&[&[1, 0]], 2);
        let b = space(&[&[0, 1]], 2);
        assert_eq!(subspace_distance(&a, &a).unwrap(), 0);
        assert_eq!(subspace_distance(&a, &b).unwrap(), 2);
        let w = space(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]], 3);
        let u = space(&[&[1, 1, 0, 0]], 3);
        assert_eq!(subspace_distance(&u, &w).unwrap(), 2);
        assert!(subspace_distance(&a, &w).is_err());
    }

    #[test]
    fn intersection_by_zassenhaus() {
        let u = space(&[&[1, 0, 0], &[0, 1, 0]], 2);
        let w = space(&[&[0, 1, 0], &[0, 0, 1]], 2);
        assert_eq!(u.intersection(&w).unwrap(), space(&[&[0, 1, 0]], 2));
        assert_eq!(u.intersection(&Subspace::zero(3, 2).unwrap()).unwrap().dim(), 0);
    }

    #[test]
    fn identity_closure() {
        let ab = algebra_closure(&[Mat::identity(3, 2).unwrap()]).unwrap();
        assert_eq!(ab.dim(), 1);
        let c = enumerate_row_spaces(&ab, ROW_SPACE_CAP).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.dimensions(), vec![0, 3]);
        assert_eq!(min_subspace_distance(&c).unwrap(), 3);
        assert_eq!(c.parameters(), "(3,2,3,{0,3})_2");
    }

    #[test]
    fn nilpotent_closure_is_not_unital() {
        let n = Mat::from_rows(&[[0, 1], [0, 0]], 3).unwrap();
        let ab = algebra_closure(&[n.clone()]).unwrap();
        assert_eq!(ab.dim(), 1);
        assert!(ab.contains(&n));
        assert!(!ab.contains(&Mat::identity(2, 3).unwrap()));
    }

    #[test]
    fn closure_is_closed() {
        // two non-commuting 3x3 matrices over F_2 generate a larger algebra
        let a = Mat::from_rows(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]], 2).unwrap();
        let b = Mat::from_rows(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]], 2).unwrap();
        let ab = algebra_closure(&[a, b]).unwrap();
        for x in ab.basis() {
            for y in ab.basis() {
                assert!(ab.contains(&x.mul(y).unwrap()));
            }
        }
        // full matrix algebra: the shifts generate all of M_3(F_2)
        assert_eq!(ab.dim(), 9);
    }

    #[test]
    fn self_orthogonality_check() {
        let full = SubspaceCode::new(4, 2, [Subspace::full(4, 2).unwrap()]).unwrap();
        assert!(!check_so_subspace(&full));
        let zero = SubspaceCode::new(4, 2, [Subspace::zero(4, 2).unwrap()]).unwrap();
        assert!(check_so_subspace(&zero));
        assert_eq!(min_subspace_distance(&zero), Err(Error::TooFewCodewords));
        let so = SubspaceCode::new(4, 2, [space(&[&[1, 1, 0, 0]], 2), space(&[&[0, 0, 1, 1]], 2)]).unwrap();
        assert!(check_so_subspace(&so));
        let not = SubspaceCode::new(4, 2, [space(&[&[1, 1, 0, 0]], 2), space(&[&[0, 1, 1, 0]], 2)]).unwrap();
        assert!(!check_so_subspace(&not));
    }

    #[test]
    fn enumeration_cap() {
        let ab = algebra_closure(&[Mat::identity(2, 2).unwrap(), Mat::from_rows(&[[0, 1], [1, 0]], 2).unwrap()]).unwrap();
        assert_eq!(ab.dim(), 2);
        match enumerate_row_spaces(&ab, 2) {
            Err(Error::TooLarge { required: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generator_order_is_irrelevant() {
        let a = Mat::from_rows(&[[1, 1, 0], [1, 1, 0], [0, 0, 0]], 2).unwrap();
        let b = Mat::from_rows(&[[0, 0, 0], [0, 0, 1], [0, 0, 1]], 2).unwrap();
        let x = enumerate_row_spaces(&algebra_closure(&[a.clone(), b.clone()]).unwrap(), ROW_SPACE_CAP).unwrap();
        let y = enumerate_row_spaces(&algebra_closure(&[b, a]).unwrap(), ROW_SPACE_CAP).unwrap();
        assert_eq!(x, y);
    }

    fn arb_space(n: usize, p: u32) -> impl Strategy<Value = Subspace> {
        (0..=n).prop_flat_map(move |r| {
            proptest::collection::vec(0..p as i64, r * n).prop_map(move |v| {
                if r == 0 {
                    return Subspace::zero(n, p).unwrap();
                }
                Subspace::new(&Mat::from_fn(r, n, p, |i, j| v[i * n + j]).unwrap()).unwrap()
            })
        })
    }

    fn triple(n: usize, p: u32) -> impl Strategy<Value = (Subspace, Subspace, Subspace)> {
        (arb_space(n, p), arb_space(n, p), arb_space(n, p))
    }

    proptest! {
        #[test]
        fn metric_axioms((u, v, w) in prop_oneof![triple(8, 2), triple(5, 3)]) {
            let d = |a: &Subspace, b: &Subspace| subspace_distance(a, b).unwrap();
            prop_assert_eq!(d(&u, &u), 0);
            prop_assert_eq!(d(&u, &v), d(&v, &u));
            prop_assert_eq!(d(&u, &v) == 0, u == v);
            prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
        }

        #[test]
        fn distance_via_intersection((u, v) in prop_oneof![(arb_space(8, 2), arb_space(8, 2)), (arb_space(5, 3), arb_space(5, 3))]) {
            let sum = u.sum(&v).unwrap().dim();
            let cap = u.intersection(&v).unwrap().dim();
            prop_assert_eq!(sum + cap, u.dim() + v.dim());
            prop_assert_eq!(subspace_distance(&u, &v).unwrap(), sum - cap);
        }

        #[test]
        fn canonical_form_is_basis_independent(u in arb_space(6, 3), seed in proptest::collection::vec(0i64..3, 36)) {
            // random combinations of the basis span the same space when full rank
            let k = u.dim();
            prop_assume!(k > 0);
            let mix = Mat::from_fn(k, k, 3, |i, j| seed[i * 6 + j]).unwrap();
            prop_assume!(mix.rank().unwrap() == k);
            let other = Subspace::new(&mix.mul(u.basis()).unwrap()).unwrap();
            prop_assert_eq!(other, u);
        }
    }
}

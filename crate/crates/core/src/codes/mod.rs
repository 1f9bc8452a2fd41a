//! Linear codes spanned by quotient matrices, and their analysis.

pub(crate) mod kernel;
mod macwilliams;
mod ring;
mod support;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use macwilliams::macwilliams_transform;
pub use ring::{build_ring_code, RingCode};
pub use support::{scan_support_graphs, support_graph, weight_supports, SupportRule};

use crate::algebra::{check_prime, Mat};
use crate::partitions::QuotientSystem;
use crate::schemes::IntersectionTensor;
use crate::{Error, Result};
use kernel::{with_kernel, Kernel};

/// Full enumeration is used for minimum distance up to this many codewords.
pub const EXHAUSTIVE_CAP: u128 = 1 << 24;
/// Largest code (or dual) whose weight distribution is enumerated.
pub const WEIGHT_CAP: u128 = 1 << 28;

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Provenance {
    pub graph: String,
    pub subgroup: String,
    pub relation: Vec<usize>,
}

/// A linear code over a prime field, kept as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Mat,
    pivots: Vec<usize>,
    provenance: Option<Provenance>,
}

impl LinearCode {
    /// Row space of `generator`; the modulus must be prime.
    pub fn new(generator: &Mat) -> Result<Self> {
        let r = generator.rref()?;
        Ok(LinearCode { generator: r.basis(), pivots: r.pivots, provenance: None })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn p(&self) -> u32 {
        self.generator.modulus()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// The RREF generator matrix (`k` rows).
    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of codewords as `p^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.p() as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX)
    }

    /// `message · G`.
    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        let p = self.p() as u64;
        let mut out = vec![0u64; self.n()];
        for (r, &a) in message.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (o, &g) in out.iter_mut().zip(self.generator.row(r)) {
                *o += a as u64 * g as u64;
            }
        }
        out.into_iter().map(|x| (x % p) as u32).collect()
    }

    /// The code spanned by the listed codewords of `self`.
    pub fn subcode(&self, messages: &[Vec<u32>]) -> Result<LinearCode> {
        let rows: Vec<Vec<i64>> =
            messages.iter().map(|m| self.encode(m).into_iter().map(i64::from).collect()).collect();
        if rows.is_empty() {
            return LinearCode::new(&Mat::zeros(1, self.n(), self.p())?);
        }
        LinearCode::new(&Mat::from_rows(&rows, self.p())?)
    }

    /// The dual code, from the null space of the RREF generator.
    pub fn dual(&self) -> LinearCode {
        let (n, p) = (self.n(), self.p());
        let mut is_pivot = vec![None; n];
        for (r, &c) in self.pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut rows = Vec::new();
        for f in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![0i64; n];
            v[f] = 1;
            for (r, &c) in self.pivots.iter().enumerate() {
                v[c] = (p - self.generator.get(r, f)) as i64 % p as i64;
            }
            rows.push(v);
        }
        if rows.is_empty() {
            rows.push(vec![0; n]);
        }
        LinearCode::new(&Mat::from_rows(&rows, p).expect("rows share a length")).expect("prime modulus")
    }

    /// `[n,k]_p` or `[n,k,d]_p`.
    pub fn parameters(&self, d: Option<usize>) -> String {
        match d {
            Some(d) => format!("[{},{},{}]_{}", self.n(), self.k(), d, self.p()),
            None => format!("[{},{}]_{}", self.n(), self.k(), self.p()),
        }
    }
}

/// Row space of `M_i` mod `p` for a uniform equitable partition. Requires
/// `p | p_ii^k` for every `k` and asserts `G Gᵀ = 0` on the result.
pub fn build_code(qs: &QuotientSystem, t: &IntersectionTensor, i: usize, p: u32) -> Result<LinearCode> {
    check_prime(p)?;
    if i >= qs.quotients().len() {
        return Err(Error::IndexOutOfRange { index: i, bound: qs.quotients().len() });
    }
    qs.partition().require_uniform()?;
    t.require_divisible(&[i], p)?;
    let g = qs.quotient(i).to_mod(p)?;
    if !g.gram().is_zero() {
        return Err(Error::NotSelfOrthogonal);
    }
    LinearCode::new(&g)
}

/// Strategy used for a minimum-distance computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    Exhaustive,
    BrouwerZimmermann,
}

/// Minimum distance with its certificate: the search stops only once the
/// lower bound reaches the weight of a codeword actually found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimumDistance {
    pub d: usize,
    pub lower: usize,
    pub upper: usize,
    pub method: DistanceMethod,
    /// Highest enumeration level reached (Brouwer–Zimmermann only).
    pub level: usize,
    pub information_sets: usize,
}

/// Exact minimum distance: full enumeration for up to 2^24 codewords,
/// Brouwer–Zimmermann otherwise.
pub fn minimum_distance(c: &LinearCode) -> Result<MinimumDistance> {
    let method = if c.size() <= EXHAUSTIVE_CAP { DistanceMethod::Exhaustive } else { DistanceMethod::BrouwerZimmermann };
    minimum_distance_by(c, method)
}

pub fn minimum_distance_by(c: &LinearCode, method: DistanceMethod) -> Result<MinimumDistance> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    match method {
        DistanceMethod::Exhaustive => {
            if c.size() > WEIGHT_CAP {
                return Err(Error::TooLarge { what: "codeword enumeration", required: c.size(), cap: WEIGHT_CAP });
            }
            let d = with_kernel!(c.p(), c.n(), |kern| {
                let rows = kern.pack_rows(c.generator());
                kernel::min_weight_exhaustive(kern, &rows, c.k())
            })
            .ok_or(Error::EmptyCode)? as usize;
            Ok(MinimumDistance { d, lower: d, upper: d, method, level: c.k(), information_sets: 0 })
        }
        DistanceMethod::BrouwerZimmermann => brouwer_zimmermann(c),
    }
}

/// Systematic generators on pairwise disjoint column sets. Each entry holds
/// the generator and the number of its pivots among the fresh columns.
fn information_sets(c: &LinearCode) -> Vec<(Mat, usize)> {
    let (n, k) = (c.n(), c.k());
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let fresh: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
        if fresh.is_empty() {
            break;
        }
        let order: Vec<usize> = fresh.iter().copied().chain((0..n).filter(|&j| used[j])).collect();
        let r = c.generator().select_columns(&order).rref().expect("prime modulus");
        let fresh_rank = r.pivots.iter().filter(|&&q| q < fresh.len()).count();
        if fresh_rank == 0 {
            break;
        }
        for &q in r.pivots.iter().filter(|&&q| q < fresh.len()) {
            used[order[q]] = true;
        }
        let mut inverse = vec![0usize; n];
        for (i, &j) in order.iter().enumerate() {
            inverse[j] = i;
        }
        let g = r.matrix.select_columns(&inverse).row_block(0, k);
        out.push((g, fresh_rank));
        if fresh_rank < k {
            break;
        }
    }
    out
}

fn brouwer_zimmermann(c: &LinearCode) -> Result<MinimumDistance> {
    let k = c.k();
    let sets = information_sets(c);
    let deficits: Vec<usize> = sets.iter().map(|(_, r)| k - r).collect();
    let (d, lower, level) = with_kernel!(c.p(), c.n(), |kern| {
        let packed: Vec<Vec<u64>> = sets.iter().map(|(g, _)| kern.pack_rows(g)).collect();
        let s = kern.stride();
        let mut upper = packed
            .iter()
            .flat_map(|rows| rows.chunks(s).map(|r| kern.weight(r)))
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(u32::MAX) as usize;
        let mut lower = 0usize;
        let mut level = 0;
        'outer: for w in 1..=k {
            level = w;
            for (j, rows) in packed.iter().enumerate() {
                upper = upper.min(kernel::min_weight_level(kern, rows, k, w) as usize);
                // codewords not yet seen have message weight > w on sets 0..=j
                // and > w - 1 on the rest
                lower = deficits
                    .iter()
                    .enumerate()
                    .map(|(i, &def)| (w + usize::from(i <= j)).saturating_sub(def))
                    .sum();
                if lower >= upper {
                    break 'outer;
                }
            }
        }
        if level == k {
            // every codeword has been enumerated from the first set
            lower = upper;
        }
        (upper, lower, level)
    });
    Ok(MinimumDistance {
        d,
        lower: lower.min(d),
        upper: d,
        method: DistanceMethod::BrouwerZimmermann,
        level,
        information_sets: sets.len(),
    })
}

/// `weights[w]` = number of codewords of weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<u128>,
}

impl WeightDistribution {
    /// Nonzero weights that occur.
    pub fn weights(&self) -> Vec<usize> {
        self.counts.iter().enumerate().skip(1).filter(|(_, &c)| c > 0).map(|(w, _)| w).collect()
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }
}

/// Weight distribution by enumeration, or from the dual by MacWilliams.
pub fn weight_distribution(c: &LinearCode) -> Result<WeightDistribution> {
    if c.size() <= WEIGHT_CAP {
        return Ok(WeightDistribution { counts: enumerate_weights(c) });
    }
    let dual = c.dual();
    if dual.size() <= WEIGHT_CAP {
        let b = enumerate_weights(&dual);
        return Ok(WeightDistribution { counts: macwilliams_transform(&b, c.n(), c.p(), dual.k())? });
    }
    Err(Error::TooLarge { what: "weight distribution", required: c.size().min(dual.size()), cap: WEIGHT_CAP })
}

fn enumerate_weights(c: &LinearCode) -> Vec<u128> {
    if c.k() == 0 {
        let mut h = vec![0u128; c.n() + 1];
        h[0] = 1;
        return h;
    }
    with_kernel!(c.p(), c.n(), |kern| {
        let rows = kern.pack_rows(c.generator());
        kernel::weight_histogram(kern, &rows, c.k(), c.n())
    })
}

/// `(self_orthogonal, self_dual)`.
pub fn duality_flags(c: &LinearCode) -> (bool, bool) {
    let so = c.generator().gram().is_zero();
    (so, so && 2 * c.k() == c.n())
}

/// No zero column and no two proportional columns in the generator.
pub fn is_projective(c: &LinearCode) -> bool {
    let p = c.p();
    let g = c.generator();
    let mut seen = hashbrown::HashSet::new();
    let mut projective = true;
    for col in 0..c.n() {
        let column: Vec<u32> = (0..c.k()).map(|r| g.get(r, col)).collect();
        let Some(&lead) = column.iter().find(|&&x| x != 0) else {
            projective = false;
            break;
        };
        let inv = crate::algebra::inv_mod(lead, p).expect("prime field") as u64;
        let normal: Vec<u32> = column.iter().map(|&x| ((x as u64 * inv) % p as u64) as u32).collect();
        if !seen.insert(normal) {
            projective = false;
            break;
        }
    }
    let dual = c.dual();
    if dual.k() > 0 && dual.size() <= 1 << 20 {
        let dd = minimum_distance(&dual).expect("nonzero dual").d;
        assert_eq!(projective, dd >= 3, "projectivity disagrees with dual distance");
    }
    projective
}

/// The two nonzero weights, if exactly two occur.
pub fn two_weight_check(c: &LinearCode) -> Result<Option<(usize, usize)>> {
    Ok(match weight_distribution(c)?.weights().as_slice() {
        [a, b] => Some((*a, *b)),
        _ => None,
    })
}

/// Everything the tables report about one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub d: Option<MinimumDistance>,
    pub weight_distribution: Option<WeightDistribution>,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub projective: bool,
    pub two_weight: Option<(usize, usize)>,
    pub provenance: Option<Provenance>,
}

impl CodeReport {
    pub fn parameters(&self) -> String {
        match &self.d {
            Some(d) => format!("[{},{},{}]_{}", self.n, self.k, d.d, self.p),
            None => format!("[{},{}]_{}", self.n, self.k, self.p),
        }
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parameters())?;
        if self.self_dual {
            f.write_str(" self-dual")?;
        } else if self.self_orthogonal {
            f.write_str(" self-orthogonal")?;
        }
        if self.projective {
            f.write_str(" projective")?;
        }
        if let Some((a, b)) = self.two_weight {
            write!(f, " two-weight({a},{b})")?;
        }
        Ok(())
    }
}

/// Computes the full report. The weight distribution (and hence the
/// two-weight flag) is skipped when neither the code nor its dual is small
/// enough to enumerate.
pub fn report(c: &LinearCode) -> Result<CodeReport> {
    let d = if c.k() == 0 { None } else { Some(minimum_distance(c)?) };
    let wd = weight_distribution(c).ok();
    let two_weight = wd.as_ref().and_then(|w| match w.weights().as_slice() {
        [a, b] => Some((*a, *b)),
        _ => None,
    });
    let (so, sd) = duality_flags(c);
    Ok(CodeReport {
        n: c.n(),
        k: c.k(),
        p: c.p(),
        d,
        weight_distribution: wd,
        self_orthogonal: so,
        self_dual: sd,
        projective: c.k() > 0 && is_projective(c),
        two_weight,
        provenance: c.provenance.clone(),
    })
}

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{find_automorphisms_of, is_automorphism, GroupKind, OrbitPartition, Perm, PermGroup, Structure};
use crate::graphs::Graph;
use crate::{Error, Result};

/// Closure cap while growing candidate subgroups.
const SUBGROUP_CAP: usize = 100_000;
/// Node budget for the auxiliary automorphism searches.
const AUX_BUDGET: u64 = 200_000;
/// Random elements tried per auxiliary group.
const INNER_TRIES: usize = 64;

/// Random group elements by product replacement with an accumulator.
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(gens: &[Perm], degree: usize, seed: u64) -> Self {
        let mut gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        let r = (2 * gens.len()).max(10);
        let slots = (0..r).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement { slots, acc: Perm::identity(degree), rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Perm {
        let r = self.slots.len();
        let i = self.rng.random_range(0..r);
        let mut j = self.rng.random_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.random::<bool>() { self.slots[j].clone() } else { self.slots[j].inverse() };
        self.slots[i] = if self.rng.random::<bool>() { self.slots[i].then(&other) } else { other.then(&self.slots[i]) };
        self.acc = self.acc.then(&self.slots[i]);
        self.acc.clone()
    }
}

/// A subgroup order, optionally with a required isomorphism type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupTarget {
    pub order: u64,
    pub kind: Option<GroupKind>,
}

impl SubgroupTarget {
    pub fn order(order: u64) -> Self {
        SubgroupTarget { order, kind: None }
    }

    pub fn kind(kind: GroupKind) -> Self {
        SubgroupTarget { order: kind.order(), kind: Some(kind) }
    }
}

impl FromStr for SubgroupTarget {
    type Err = Error;

    /// A bare number is an order; anything else a group name.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().parse::<u64>() {
            Ok(0) => Err(Error::Parse { offset: 0, message: "subgroup order must be positive".into() }),
            Ok(n) => Ok(SubgroupTarget::order(n)),
            Err(_) => Ok(SubgroupTarget::kind(s.parse()?)),
        }
    }
}

impl fmt::Display for SubgroupTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "order {}", self.order),
        }
    }
}

/// A subgroup with uniform orbits.
#[derive(Clone, Debug)]
pub struct SampledSubgroup {
    pub group: PermGroup,
    pub order: u64,
    pub kind: GroupKind,
    pub orbits: OrbitPartition,
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            best = p;
            n /= p;
        }
        p += 1;
    }
    best.max(n)
}

/// All cycles have the same length and there are no fixed points.
fn is_semiregular(p: &Perm) -> bool {
    let o = p.order() as usize;
    o > 1 && p.cycles().iter().all(|c| c.len() == o) && p.cycles().len() * o == p.degree()
}

struct Sampler<'a> {
    graph: &'a Graph,
    n: usize,
    pr: ProductReplacement,
    rng: ChaCha8Rng,
    out: Vec<SampledSubgroup>,
}

impl Sampler<'_> {
    fn offer(&mut self, gens: Vec<Perm>, elements: &[Perm], target: &SubgroupTarget) {
        let kind = GroupKind::identify(elements);
        if elements.len() as u64 != target.order || target.kind.as_ref().is_some_and(|k| *k != kind) {
            return;
        }
        let group = PermGroup::new(self.n, gens).expect("degrees agree");
        let orbits = group.orbits();
        if orbits.is_uniform() && !self.out.iter().any(|s| s.orbits == orbits) {
            self.out.push(SampledSubgroup { group, order: target.order, kind, orbits });
        }
    }

    fn cyclic(&mut self, target: &SubgroupTarget, trials: usize) {
        let n_ord = target.order;
        for _ in 0..trials {
            let x = self.pr.next_element();
            let o = x.order();
            if o % n_ord != 0 {
                continue;
            }
            let h = x.pow((o / n_ord) as i64);
            let group = PermGroup::new(self.n, vec![h.clone()]).expect("degree");
            if let Some(els) = group.elements(SUBGROUP_CAP) {
                self.offer(vec![h], &els, target);
            }
        }
    }

    /// Grows `<x, z_1, z_2, ...>` inside a group that normalizes (or, for
    /// abelian targets, centralizes) `<x>`. In `semiregular` mode every
    /// generator and every intermediate group must act without fixed points
    /// and with all orbits of full length.
    fn grow(&mut self, target: &SubgroupTarget, trials: usize, semiregular: bool) {
        let n_ord = target.order;
        let (q, allowed, abelian) = match &target.kind {
            Some(k) => {
                let orders = k.element_orders();
                let q = orders.iter().copied().filter(|&o| o < n_ord).max().unwrap_or(1);
                (q, orders, k.is_abelian())
            }
            None => {
                let divisors: Vec<u64> = (1..=n_ord).filter(|d| n_ord % d == 0).collect();
                (largest_prime_factor(n_ord), divisors, false)
            }
        };
        if q <= 1 {
            return;
        }
        let base = Structure::from_graph(self.graph);
        for _ in 0..trials {
            let x = self.pr.next_element();
            let o = x.order();
            if o % q != 0 {
                continue;
            }
            let x = x.pow((o / q) as i64);
            if semiregular && !is_semiregular(&x) {
                continue;
            }
            let st = if abelian {
                let arcs = (0..self.n).map(|v| vec![x.apply(v) as u32]).collect();
                base.clone().with_arcs(arcs, false)
            } else {
                let blocks = PermGroup::new(self.n, vec![x.clone()]).expect("degree").orbits();
                base.clone().with_blocks(blocks.cells())
            };
            let aux = find_automorphisms_of(&st, AUX_BUDGET);
            let mut inner = ProductReplacement::new(&aux.generators, self.n, self.rng.random());
            let mut gens = vec![x.clone()];
            let mut elements = PermGroup::new(self.n, gens.clone()).expect("degree").elements(SUBGROUP_CAP).unwrap_or_default();
            for _ in 0..INNER_TRIES {
                if elements.len() as u64 == n_ord {
                    break;
                }
                let y = inner.next_element();
                let oy = y.order();
                for &r in allowed.iter().rev().filter(|&&r| r > 1 && oy % r == 0) {
                    let z = y.pow((oy / r) as i64);
                    if elements.contains(&z) || (semiregular && !is_semiregular(&z)) {
                        continue;
                    }
                    let mut cand = gens.clone();
                    cand.push(z);
                    let Some(els) = PermGroup::new(self.n, cand.clone()).expect("degree").elements(n_ord as usize) else {
                        continue;
                    };
                    let free = || {
                        let group = PermGroup::new(self.n, cand.clone()).expect("degree");
                        group.orbits().cells().iter().all(|c| c.len() == els.len())
                    };
                    if n_ord % els.len() as u64 == 0 && (!semiregular || free()) {
                        gens = cand;
                        elements = els;
                        break;
                    }
                }
            }
            if elements.len() as u64 == n_ord {
                self.offer(gens, &elements, target);
            }
        }
    }
}

/// Samples subgroups of `<gens>` of the requested orders (and types) whose
/// orbits all have the same length. Results are deduplicated by orbit
/// partition and depend only on `seed`.
pub fn sample_subgroups(
    g: &Graph,
    gens: &[Perm],
    targets: &[SubgroupTarget],
    trials: usize,
    seed: u64,
) -> Result<Vec<SampledSubgroup>> {
    let n = g.n();
    for p in gens {
        if !is_automorphism(g, p)? {
            return Err(Error::InvalidPermutation(format!("{p} is not an automorphism")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pr = ProductReplacement::new(gens, n, rng.random());
    let mut s = Sampler { graph: g, n, pr, rng, out: Vec::new() };
    let mut all = Vec::new();
    for target in targets {
        s.out.clear();
        if target.order == 1 {
            s.offer(vec![Perm::identity(n)], &[Perm::identity(n)], target);
        } else {
            let cyclic_possible = target.kind.as_ref().is_none_or(|k| matches!(k, GroupKind::Cyclic(_)));
            if cyclic_possible {
                s.cyclic(target, trials);
            }
            if !matches!(target.kind, Some(GroupKind::Cyclic(_))) {
                s.grow(target, trials, true);
                s.grow(target, trials, false);
            }
        }
        all.append(&mut s.out);
    }
    Ok(all)
}

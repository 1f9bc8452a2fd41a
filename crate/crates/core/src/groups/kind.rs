use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::Perm;
use crate::{Error, Result};

/// Isomorphism type of a small group, recognised from its element orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Trivial,
    Cyclic(u64),
    /// `p^k` with `k ≥ 2`.
    Elementary { p: u64, k: u32 },
    /// Other abelian groups, by invariant factors (largest first).
    Abelian(Vec<u64>),
    /// Dihedral of the given order; order 6 prints as `S_3`.
    Dihedral(u64),
    Quaternion,
    Alternating4,
    /// `Z_5:Z_4`, the Frobenius group of order 20.
    Frobenius20,
    Other { order: u64, abelian: bool },
}

impl GroupKind {
    pub fn order(&self) -> u64 {
        match self {
            GroupKind::Trivial => 1,
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => *n,
            GroupKind::Elementary { p, k } => p.pow(*k),
            GroupKind::Abelian(f) => f.iter().product(),
            GroupKind::Quaternion => 8,
            GroupKind::Alternating4 => 12,
            GroupKind::Frobenius20 => 20,
            GroupKind::Other { order, .. } => *order,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupKind::Trivial | GroupKind::Cyclic(_) | GroupKind::Elementary { .. } | GroupKind::Abelian(_) => true,
            GroupKind::Other { abelian, .. } => *abelian,
            _ => false,
        }
    }

    /// Element orders that occur, ascending.
    pub fn element_orders(&self) -> Vec<u64> {
        let divisors = |n: u64| (1..=n).filter(|d| n % d == 0).collect::<Vec<_>>();
        match self {
            GroupKind::Trivial => vec![1],
            GroupKind::Cyclic(n) => divisors(*n),
            GroupKind::Elementary { p, .. } => vec![1, *p],
            GroupKind::Abelian(f) => divisors(f[0]),
            GroupKind::Dihedral(n) => {
                let mut v = divisors(n / 2);
                if !v.contains(&2) {
                    v.push(2);
                    v.sort_unstable();
                }
                v
            }
            GroupKind::Quaternion => vec![1, 2, 4],
            GroupKind::Alternating4 => vec![1, 2, 3],
            GroupKind::Frobenius20 => vec![1, 2, 4, 5],
            GroupKind::Other { order, .. } => divisors(*order),
        }
    }

    /// Classifies a group from its full element list.
    pub fn identify(elements: &[Perm]) -> GroupKind {
        let n = elements.len() as u64;
        if n == 1 {
            return GroupKind::Trivial;
        }
        let orders: Vec<u64> = elements.iter().map(Perm::order).collect();
        let count = |o: u64| orders.iter().filter(|&&x| x == o).count() as u64;
        let abelian = elements.iter().all(|a| elements.iter().all(|b| a.then(b) == b.then(a)));
        if abelian {
            return abelian_kind(n, &orders);
        }
        let involutions = count(2);
        if n % 2 == 0 && n >= 6 {
            let m = n / 2;
            let expected = if m % 2 == 1 { m } else { m + 1 };
            if count(m) > 0 && involutions == expected {
                return GroupKind::Dihedral(n);
            }
        }
        if n == 8 && involutions == 1 {
            return GroupKind::Quaternion;
        }
        if n == 12 && involutions == 3 && count(3) == 8 {
            return GroupKind::Alternating4;
        }
        if n == 20 && involutions == 5 && count(4) == 10 && count(5) == 4 {
            return GroupKind::Frobenius20;
        }
        GroupKind::Other { order: n, abelian: false }
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn abelian_kind(n: u64, orders: &[u64]) -> GroupKind {
    // For each prime p: log_p #{x : x^{p^j} = 1} = Σ_i min(j, e_i).
    let mut factors: Vec<u64> = Vec::new();
    for (p, e) in prime_factors(n) {
        let mut logs = vec![0u32];
        for j in 1..=e {
            let pj = p.pow(j);
            let c = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            logs.push(c.ilog(p));
        }
        // at_least[j-1] = #{i : e_i ≥ j}
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let parts = at_least.first().copied().unwrap_or(0) as usize;
        let exps: Vec<u32> = (0..parts).map(|i| at_least.iter().filter(|&&c| c as usize > i).count() as u32).collect();
        for (i, &x) in exps.iter().enumerate() {
            if factors.len() <= i {
                factors.push(1);
            }
            factors[i] *= p.pow(x);
        }
    }
    match factors.as_slice() {
        [] => GroupKind::Trivial,
        [c] => GroupKind::Cyclic(*c),
        _ => {
            let primes = prime_factors(n);
            if primes.len() == 1 && factors.iter().all(|&f| f == primes[0].0) {
                GroupKind::Elementary { p: primes[0].0, k: primes[0].1 }
            } else {
                GroupKind::Abelian(factors)
            }
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => f.write_str("I"),
            GroupKind::Cyclic(n) => write!(f, "Z_{n}"),
            GroupKind::Elementary { p, k } => write!(f, "E_{}", p.pow(*k)),
            GroupKind::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| format!("Z_{x}")).collect();
                f.write_str(&parts.join("×"))
            }
            GroupKind::Dihedral(6) => f.write_str("S_3"),
            GroupKind::Dihedral(n) => write!(f, "D_{n}"),
            GroupKind::Quaternion => f.write_str("Q_8"),
            GroupKind::Alternating4 => f.write_str("A_4"),
            GroupKind::Frobenius20 => f.write_str("Z_5:Z_4"),
            GroupKind::Other { order, abelian } => {
                write!(f, "{}({order})", if *abelian { "abelian" } else { "group" })
            }
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    /// Accepts the names printed by `Display`, e.g. `Z_6`, `E_25`, `S_3`,
    /// `D_10`, `Z_5:Z_4`, `Z_4xZ_2`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        let bad = || Error::Parse { offset: 0, message: format!("unknown group name `{s}`") };
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        match t.as_str() {
            "I" | "1" => return Ok(GroupKind::Trivial),
            "S_3" => return Ok(GroupKind::Dihedral(6)),
            "Q_8" => return Ok(GroupKind::Quaternion),
            "A_4" => return Ok(GroupKind::Alternating4),
            "Z_5:Z_4" => return Ok(GroupKind::Frobenius20),
            _ => {}
        }
        if t.contains(['×', 'x', '*']) {
            let mut fs = t
                .split(['×', 'x', '*'])
                .map(|p| p.strip_prefix("Z_").ok_or_else(bad).and_then(num))
                .collect::<Result<Vec<u64>>>()?;
            fs.sort_unstable_by(|a, b| b.cmp(a));
            let orders = abelian_orders(&fs);
            return Ok(abelian_kind(fs.iter().product(), &orders));
        }
        if let Some(x) = t.strip_prefix("Z_") {
            let n = num(x)?;
            return Ok(if n == 1 { GroupKind::Trivial } else { GroupKind::Cyclic(n) });
        }
        if let Some(x) = t.strip_prefix("D_") {
            let n = num(x)?;
            return if n >= 6 && n % 2 == 0 { Ok(GroupKind::Dihedral(n)) } else { Err(bad()) };
        }
        if let Some(x) = t.strip_prefix("E_") {
            let q = num(x)?;
            return match prime_factors(q).as_slice() {
                [(p, k)] if *k >= 2 => Ok(GroupKind::Elementary { p: *p, k: *k }),
                [(p, 1)] => Ok(GroupKind::Cyclic(*p)),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

/// Element orders of `Z_{f_1} × ... × Z_{f_r}`, with multiplicity.
fn abelian_orders(fs: &[u64]) -> Vec<u64> {
    let mut orders = vec![1u64];
    for &f in fs {
        let mut next = Vec::with_capacity(orders.len() * f as usize);
        for &o in &orders {
            for a in 0..f {
                let oa = f / crate::algebra::gcd(a, f);
                next.push(o / crate::algebra::gcd(o, oa) * oa);
            }
        }
        orders = next;
    }
    orders
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{parse_perm, PermGroup, CLOSURE_CAP};

    fn kind_of(n: usize, gens: &[&str]) -> GroupKind {
        let gens = gens.iter().map(|g| parse_perm(g, n).unwrap()).collect();
        GroupKind::identify(&PermGroup::new(n, gens).unwrap().elements(CLOSURE_CAP).unwrap())
    }

    #[test]
    fn recognises_small_groups() {
        assert_eq!(kind_of(3, &["()"]), GroupKind::Trivial);
        assert_eq!(kind_of(6, &["(0,1,2,3,4,5)"]), GroupKind::Cyclic(6));
        assert_eq!(kind_of(4, &["(0,1)(2,3)", "(0,2)(1,3)"]), GroupKind::Elementary { p: 2, k: 2 });
        assert_eq!(kind_of(3, &["(0,1,2)", "(0,1)"]), GroupKind::Dihedral(6));
        assert_eq!(kind_of(4, &["(0,1,2,3)", "(0,2)"]), GroupKind::Dihedral(8));
        assert_eq!(kind_of(6, &["(0,1,2,3)", "(4,5)"]), GroupKind::Abelian(vec![4, 2]));
        assert_eq!(kind_of(4, &["(0,1,2)", "(0,1)(2,3)"]), GroupKind::Alternating4);
        assert_eq!(kind_of(5, &["(0,1,2,3,4)", "(1,2,4,3)"]), GroupKind::Frobenius20);
        assert_eq!(kind_of(10, &["(0,1,2,3,4)", "(5,6,7,8,9)"]), GroupKind::Elementary { p: 5, k: 2 });
        // Q_8 in its regular action
        let q8 = kind_of(8, &["(0,1,2,3)(4,5,6,7)", "(0,4,2,6)(1,7,3,5)"]);
        assert_eq!(q8, GroupKind::Quaternion);
    }

    #[test]
    fn names_roundtrip() {
        for name in ["I", "Z_7", "E_4", "E_25", "S_3", "D_8", "D_14", "Q_8", "A_4", "Z_5:Z_4", "Z_4×Z_2"] {
            let k: GroupKind = name.parse().unwrap();
            assert_eq!(k.to_string(), name);
        }
        assert_eq!("Z_4xZ_2".parse::<GroupKind>().unwrap(), GroupKind::Abelian(vec![4, 2]));
        assert_eq!("Z_2xZ_2".parse::<GroupKind>().unwrap(), GroupKind::Elementary { p: 2, k: 2 });
        assert_eq!("Z_2xZ_3".parse::<GroupKind>().unwrap(), GroupKind::Cyclic(6));
        assert_eq!("E_{25}".parse::<GroupKind>().unwrap().order(), 25);
        assert!("D_5".parse::<GroupKind>().is_err());
        assert!("E_12".parse::<GroupKind>().is_err());
        assert!("foo".parse::<GroupKind>().is_err());
    }

    #[test]
    fn element_order_sets() {
        assert_eq!(GroupKind::Dihedral(10).element_orders(), vec![1, 2, 5]);
        assert_eq!(GroupKind::Dihedral(8).element_orders(), vec![1, 2, 4]);
        assert_eq!(GroupKind::Cyclic(10).element_orders(), vec![1, 2, 5, 10]);
    }
}

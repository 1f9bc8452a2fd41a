//! Graph to scheme to partition to code, as used by the command line.

use std::collections::{BTreeMap, HashSet};

use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use socode_core::codes::{self, build_code, build_ring_code, LinearCode, Provenance};
use socode_core::graphs::{distance_matrices, verify_distance_regular, Graph, IntersectionArray};
use socode_core::groups::{
    find_automorphisms, is_automorphism, sample_subgroups, GroupKind, Perm, PermGroup, SubgroupTarget, CLOSURE_CAP,
};
use socode_core::partitions::{check_equitable, Partition, QuotientSystem};
use socode_core::schemes::{AssociationScheme, IntersectionTensor};
use socode_core::subspaces::{algebra_closure, check_so_subspace, enumerate_row_spaces, min_subspace_distance};

use crate::fixtures;

/// Node budget for the full automorphism search.
pub const SEARCH_BUDGET: u64 = 2_000_000;

/// A distance-regular graph with its scheme and intersection numbers.
pub struct Workspace {
    pub name: String,
    pub graph: Graph,
    pub array: IntersectionArray,
    pub scheme: AssociationScheme,
    pub tensor: IntersectionTensor,
}

impl Workspace {
    pub fn new(name: &str, graph: Graph) -> Result<Self> {
        let ds = distance_matrices(&graph)?;
        let array = verify_distance_regular(&ds).map_err(|w| anyhow!("{name} is not distance-regular: {w}"))?;
        let scheme = AssociationScheme::from_distance_regular(&ds)?;
        let tensor = scheme.intersection_tensor()?;
        Ok(Workspace { name: name.to_string(), graph, array, scheme, tensor })
    }

    pub fn fixture(name: &str) -> Result<Self> {
        let (g, _) = fixtures::load_fixture(name)?;
        Self::new(name, g)
    }

    pub fn diameter(&self) -> usize {
        self.tensor.d()
    }

    /// `p_ii^k` as rows `i = 0..=d`.
    pub fn diagonal_table(&self) -> Vec<Vec<u64>> {
        (0..=self.diameter()).map(|i| self.tensor.diagonal_row(i)).collect()
    }

    pub fn quotients(&self, part: &Partition) -> Result<QuotientSystem> {
        check_equitable(&self.scheme, part).map_err(|w| anyhow!("partition is not equitable: {w}"))
    }

    /// Relations `i ≥ 1` whose square satisfies the divisibility hypothesis.
    pub fn admissible(&self, m: u32) -> Vec<usize> {
        (1..=self.diameter())
            .filter(|&i| matches!(self.tensor.first_non_divisible(&[i], m), Ok(None)))
            .collect()
    }

    pub fn automorphism_generators(&self) -> Result<Vec<Perm>> {
        let aut = find_automorphisms(&self.graph, SEARCH_BUDGET);
        if !aut.complete {
            bail!("automorphism search for {} exceeded its budget", self.name);
        }
        Ok(aut.generators)
    }
}

/// A subgroup, represented by its orbit partition.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub label: String,
    pub order: Option<u64>,
    pub partition: Partition,
    pub generators: Vec<Perm>,
}

impl Subgroup {
    pub fn trivial(n: usize) -> Self {
        Subgroup { label: "I".into(), order: Some(1), partition: Partition::discrete(n), generators: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub enum GroupSource {
    Trivial,
    Generators(Vec<Perm>),
    Partition(Partition),
    Sample { targets: Vec<SubgroupTarget>, seed: u64, trials: usize },
}

/// Groups generated by `gens`, labelled by isomorphism type when small.
pub fn subgroup_from_generators(ws: &Workspace, gens: Vec<Perm>) -> Result<Subgroup> {
    for p in &gens {
        if !is_automorphism(&ws.graph, p)? {
            bail!("{p} is not an automorphism of {}", ws.name);
        }
    }
    let group = PermGroup::new(ws.graph.n(), gens.clone())?;
    let (label, order) = match group.elements(CLOSURE_CAP) {
        Some(els) => (GroupKind::identify(&els).to_string(), Some(els.len() as u64)),
        None => (format!("order > {CLOSURE_CAP}"), None),
    };
    Ok(Subgroup { label, order, partition: group.orbits().to_partition(), generators: gens })
}

/// Quotient matrices up to a simultaneous relabelling of the cells.
fn quotient_signature(qs: &QuotientSystem) -> Vec<Vec<Vec<i64>>> {
    let t = qs.t();
    let mut per_cell: Vec<Vec<Vec<i64>>> = (0..t)
        .map(|c| {
            qs.quotients()
                .iter()
                .map(|m| {
                    let mut row = m.row(c).to_vec();
                    row.sort_unstable();
                    row
                })
                .collect()
        })
        .collect();
    per_cell.sort();
    per_cell
}

pub fn resolve_subgroups(ws: &Workspace, source: &GroupSource) -> Result<Vec<Subgroup>> {
    let n = ws.graph.n();
    Ok(match source {
        GroupSource::Trivial => vec![Subgroup::trivial(n)],
        GroupSource::Generators(gens) => vec![subgroup_from_generators(ws, gens.clone())?],
        GroupSource::Partition(p) => {
            vec![Subgroup { label: "partition".into(), order: None, partition: p.clone(), generators: Vec::new() }]
        }
        GroupSource::Sample { targets, seed, trials } => {
            let gens = ws.automorphism_generators()?;
            let sampled = sample_subgroups(&ws.graph, &gens, targets, *trials, *seed)?;
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for s in sampled {
                let partition = s.orbits.to_partition();
                let sig = (s.kind.to_string(), quotient_signature(&ws.quotients(&partition)?));
                if seen.insert(sig) {
                    out.push(Subgroup {
                        label: s.kind.to_string(),
                        order: Some(s.order),
                        partition,
                        generators: s.group.generators().to_vec(),
                    });
                }
            }
            out
        }
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyRecord {
    pub graph: String,
    pub vertices: usize,
    pub diameter: usize,
    pub array: String,
    pub axioms: bool,
    /// `p_ii^k`, one row per `i`.
    pub p_ii: Vec<Vec<u64>>,
}

pub fn verify(ws: &Workspace) -> VerifyRecord {
    VerifyRecord {
        graph: ws.name.clone(),
        vertices: ws.graph.n(),
        diameter: ws.diameter(),
        array: ws.array.to_string(),
        axioms: ws.scheme.verify_axioms().is_ok(),
        p_ii: ws.diagonal_table(),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CodeRow {
    pub graph: String,
    pub subgroup: String,
    pub i: usize,
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub parameters: String,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub method: Option<String>,
    pub weights: Option<Vec<usize>>,
    pub weight_distribution: Option<BTreeMap<usize, u128>>,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub projective: bool,
    pub two_weight: Option<(usize, usize)>,
    #[serde(skip)]
    pub code: Option<LinearCode>,
}

impl CodeRow {
    pub fn nkd(&self) -> (usize, usize, Option<usize>) {
        (self.n, self.k, self.d)
    }
}

/// Builds and analyses the code of `M_i` mod `p` for one partition.
pub fn code_row(ws: &Workspace, sub: &Subgroup, qs: &QuotientSystem, i: usize, p: u32) -> Result<CodeRow> {
    let code = build_code(qs, &ws.tensor, i, p)?.with_provenance(Provenance {
        graph: ws.name.clone(),
        subgroup: sub.label.clone(),
        relation: vec![i],
    });
    let r = codes::report(&code)?;
    let wd = r.weight_distribution.as_ref();
    Ok(CodeRow {
        graph: ws.name.clone(),
        subgroup: sub.label.clone(),
        i,
        p,
        n: r.n,
        k: r.k,
        d: r.d.as_ref().map(|d| d.d),
        parameters: r.parameters(),
        lower: r.d.as_ref().map(|d| d.lower),
        upper: r.d.as_ref().map(|d| d.upper),
        method: r.d.as_ref().map(|d| format!("{:?}", d.method)),
        weights: wd.map(|w| w.weights()),
        weight_distribution: wd
            .map(|w| w.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, &c)| (w, c)).collect()),
        self_orthogonal: r.self_orthogonal,
        self_dual: r.self_dual,
        projective: r.projective,
        two_weight: r.two_weight,
        code: Some(code),
    })
}

/// One row per (subgroup, relation). Without explicit `indices` every
/// admissible relation is used; explicit ones must satisfy the hypothesis.
pub fn code_rows(ws: &Workspace, subs: &[Subgroup], indices: Option<&[usize]>, p: u32) -> Result<Vec<CodeRow>> {
    socode_core::algebra::is_prime(p).then_some(()).ok_or_else(|| anyhow!("{p} is not prime"))?;
    let rels = match indices {
        Some(ix) => ix.to_vec(),
        None => ws.admissible(p),
    };
    let mut out = Vec::new();
    for sub in subs {
        let qs = ws.quotients(&sub.partition)?;
        for &i in &rels {
            out.push(code_row(ws, sub, &qs, i, p)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingRow {
    pub graph: String,
    pub subgroup: String,
    pub i: usize,
    pub m: u32,
    pub n: usize,
    pub module_type: String,
    pub size: u128,
    pub free_rank: usize,
    pub self_orthogonal: bool,
    pub min_weight: Option<usize>,
}

pub fn ring_rows(ws: &Workspace, subs: &[Subgroup], indices: Option<&[usize]>, m: u32) -> Result<Vec<RingRow>> {
    let rels = match indices {
        Some(ix) => ix.to_vec(),
        None => ws.admissible(m),
    };
    let mut out = Vec::new();
    for sub in subs {
        let qs = ws.quotients(&sub.partition)?;
        for &i in &rels {
            let c = build_ring_code(&qs, &ws.tensor, i, m)?;
            out.push(RingRow {
                graph: ws.name.clone(),
                subgroup: sub.label.clone(),
                i,
                m,
                n: c.n(),
                module_type: c.type_string(),
                size: c.size(),
                free_rank: c.smith().free_rank(),
                self_orthogonal: c.self_orthogonal(),
                min_weight: c.minimum_weight().ok().flatten(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SubspaceRow {
    pub graph: String,
    pub subgroup: String,
    pub indices: Vec<usize>,
    pub p: u32,
    pub n: usize,
    pub algebra_dim: usize,
    pub size: usize,
    pub d: Option<usize>,
    pub dimensions: Vec<usize>,
    pub parameters: String,
    pub self_orthogonal: bool,
}

pub fn subspace_row(
    ws: &Workspace,
    sub: &Subgroup,
    qs: &QuotientSystem,
    indices: &[usize],
    p: u32,
    cap: u128,
) -> Result<SubspaceRow> {
    if indices.is_empty() {
        bail!("subspace codes need at least one relation index");
    }
    socode_core::algebra::is_prime(p).then_some(()).ok_or_else(|| anyhow!("{p} is not prime"))?;
    qs.partition().require_uniform()?;
    ws.tensor.require_divisible(indices, p)?;
    let gens = indices.iter().map(|&i| qs.quotient(i).to_mod(p)).collect::<socode_core::Result<Vec<_>>>()?;
    let ab = algebra_closure(&gens)?;
    let code = enumerate_row_spaces(&ab, cap)?;
    let so = check_so_subspace(&code);
    if !so {
        bail!("row spaces are not mutually orthogonal");
    }
    Ok(SubspaceRow {
        graph: ws.name.clone(),
        subgroup: sub.label.clone(),
        indices: indices.to_vec(),
        p,
        n: code.n(),
        algebra_dim: ab.dim(),
        size: code.size(),
        d: min_subspace_distance(&code).ok(),
        dimensions: code.dimensions(),
        parameters: code.parameters(),
        self_orthogonal: so,
    })
}

pub fn subspace_rows(ws: &Workspace, subs: &[Subgroup], indices: &[usize], p: u32, cap: u128) -> Result<Vec<SubspaceRow>> {
    let mut out = Vec::new();
    for sub in subs {
        let qs = ws.quotients(&sub.partition)?;
        out.push(subspace_row(ws, sub, &qs, indices, p, cap)?);
    }
    Ok(out)
}

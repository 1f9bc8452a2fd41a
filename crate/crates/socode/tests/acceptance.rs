//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact except the wall-clock budget of criterion 1
//! (300 s). Set `ACCEPTANCE_STRICT=1` to turn any FAIL into a nonzero exit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use socode::fixtures::fixture_names;
use socode::formats::read_generators;
use socode::pipeline::{code_row, resolve_subgroups, subspace_row, GroupSource, Subgroup, Workspace};
use socode::tables::{self, SampleOptions, TableRecord, INTERSECTION_TABLES};
use socode_core::algebra::Mat;
use socode_core::codes::{
    build_code, build_ring_code, minimum_distance_by, scan_support_graphs, DistanceMethod, LinearCode,
};
use socode_core::graphs::SrgParameters;
use socode_core::groups::{sample_subgroups, SubgroupTarget};
use socode_core::partitions::{verify_quotient_identity, Partition};
use socode_core::subspaces::{subspace_distance, Subspace, ROW_SPACE_CAP};

const TABLE_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 1;
const PARTITIONS_PER_FIXTURE: usize = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sample(ws: &Workspace, targets: &[&str], trials: usize) -> Vec<Subgroup> {
    let targets: Vec<SubgroupTarget> = targets.iter().map(|t| t.parse().unwrap()).collect();
    resolve_subgroups(ws, &GroupSource::Sample { targets, seed: SEED, trials }).unwrap()
}

fn trivial_code(ws: &Workspace, i: usize, p: u32) -> socode_core::Result<LinearCode> {
    let qs = ws.quotients(&Partition::discrete(ws.graph.n())).unwrap();
    build_code(&qs, &ws.tensor, i, p)
}

fn intersection_tables() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for t in INTERSECTION_TABLES {
        for rec in tables::reproduce(t.number, &SampleOptions::default()).unwrap() {
            if let TableRecord::Cell { table, i, k, expected, found, .. } = rec {
                bad.push(format!("table {table} p_{i}{i}^{k} expected {expected} found {found:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed <= TABLE_BUDGET;
    let cells: usize = INTERSECTION_TABLES.iter().map(|t| t.rows.len() * t.rows.len()).sum();
    let mut detail = format!("{} of {cells} cells match in {:.1}s (budget {}s)", cells - bad.len(), elapsed.as_secs_f64(), TABLE_BUDGET.as_secs());
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    outcome(pass, detail)
}

fn trivial_codes() -> Outcome {
    let expected: &[(&str, usize, u32, (usize, usize, usize))] = &[
        ("doro", 2, 2, (68, 8, 32)),
        ("hadamard48", 1, 2, (48, 24, 4)),
        ("hadamard48", 2, 2, (48, 24, 2)),
        ("hadamard48", 1, 3, (48, 34, 4)),
        ("dgewirtz", 1, 2, (112, 40, 10)),
        ("dgewirtz", 2, 3, (112, 38, 18)),
        ("dodd4", 3, 3, (70, 26, 12)),
        ("foster", 5, 2, (90, 12, 20)),
        ("foster", 4, 2, (90, 8, 24)),
        ("foster", 4, 3, (90, 30, 3)),
    ];
    let mut bad = Vec::new();
    let mut ws_cache: Option<Workspace> = None;
    for &(name, i, p, (n, k, d)) in expected {
        if ws_cache.as_ref().map_or(true, |w| w.name != name) {
            ws_cache = Some(Workspace::fixture(name).unwrap());
        }
        let ws = ws_cache.as_ref().unwrap();
        let c = trivial_code(ws, i, p).unwrap();
        let md = minimum_distance_by(&c, DistanceMethod::BrouwerZimmermann).unwrap();
        let got = (c.n(), c.k(), md.d);
        if got != (n, k, d) || md.lower != md.upper {
            bad.push(format!(
                "{name} i={i}: expected [{n},{k},{d}]_{p}, got [{},{},{}]_{p} (bounds {}..{})",
                got.0, got.1, got.2, md.lower, md.upper
            ));
        }
    }
    outcome(bad.is_empty(), format!("{}/{} rows certified equal; {}", expected.len() - bad.len(), expected.len(), bad.join("; ")))
}

/// Uniform orbit partitions per fixture for criteria 3 and 4, straight from
/// the sampler (conjugate subgroups give distinct partitions).
fn sampled_partitions(ws: &Workspace) -> Vec<Partition> {
    let targets: Vec<SubgroupTarget> = ["2", "3", "4", "5", "6", "7", "8", "10", "12", "13", "14", "17", "34", "68"]
        .iter()
        .map(|t| t.parse().unwrap())
        .collect();
    let gens = ws.automorphism_generators().unwrap();
    let mut seen = BTreeSet::new();
    let mut all = Vec::new();
    for seed in SEED..SEED + 4 {
        for s in sample_subgroups(&ws.graph, &gens, &targets, 40, seed).unwrap() {
            let part = s.orbits.to_partition();
            if part.len() > 1 && seen.insert(part.cells().to_vec()) {
                all.push(part);
            }
        }
    }
    // One per quotient class first, then conjugates, up to the cap.
    let mut classes = BTreeSet::new();
    let (mut out, rest): (Vec<_>, Vec<_>) = all.into_iter().partition(|p| classes.insert(signature(ws, p)));
    out.truncate(PARTITIONS_PER_FIXTURE);
    let room = PARTITIONS_PER_FIXTURE - out.len();
    out.extend(rest.into_iter().take(room));
    out
}

/// Quotients up to relabelling of cells.
fn signature(ws: &Workspace, part: &Partition) -> Vec<Vec<Vec<i64>>> {
    let qs = ws.quotients(part).unwrap();
    let mut cells: Vec<Vec<Vec<i64>>> = (0..qs.t())
        .map(|c| {
            qs.quotients()
                .iter()
                .map(|m| {
                    let mut r = m.row(c).to_vec();
                    r.sort_unstable();
                    r
                })
                .collect()
        })
        .collect();
    cells.sort();
    cells
}

fn gram_and_identity() -> (Outcome, Outcome) {
    let mut codes = 0;
    let mut rings = 0;
    let mut gram_bad = Vec::new();
    let mut identity_bad = Vec::new();
    let mut per_fixture = Vec::new();
    for name in fixture_names() {
        let ws = Workspace::fixture(name).unwrap();
        let n = ws.graph.n();
        let sampled = sampled_partitions(&ws);
        let classes: BTreeSet<_> = sampled.iter().map(|p| signature(&ws, p)).collect();
        per_fixture.push(format!("{name}:{}/{}", sampled.len(), classes.len()));
        let mut partitions: Vec<Partition> = vec![Partition::discrete(n), Partition::one_cell(n)];
        partitions.extend(sampled.iter().cloned());
        if sampled.len() < 5 {
            identity_bad.push(format!("{name}: only {} sampled partitions", sampled.len()));
        }
        for part in &partitions {
            let qs = ws.quotients(part).unwrap();
            if let Err((i, j)) = verify_quotient_identity(&qs, &ws.tensor) {
                identity_bad.push(format!("{name} ({} cells): M_{i} M_{j}", part.len()));
            }
            if !part.is_uniform() || part.len() == 1 {
                continue;
            }
            for p in [2, 3] {
                for i in ws.admissible(p) {
                    let c = build_code(&qs, &ws.tensor, i, p).unwrap();
                    codes += 1;
                    if !c.generator().gram().is_zero() {
                        gram_bad.push(format!("{name} i={i} p={p}"));
                    }
                }
            }
            for m in [2, 3, 4, 6] {
                for i in ws.admissible(m) {
                    let c = build_ring_code(&qs, &ws.tensor, i, m).unwrap();
                    rings += 1;
                    if !c.self_orthogonal() {
                        gram_bad.push(format!("{name} i={i} m={m}"));
                    }
                }
            }
        }
    }
    (
        outcome(gram_bad.is_empty(), format!("{codes} field codes, {rings} ring codes; failures: {gram_bad:?}")),
        outcome(
            identity_bad.is_empty(),
            format!("trivial + one-cell + sampled (partitions/quotient classes) [{}]; failures: {identity_bad:?}", per_fixture.join(", ")),
        ),
    )
}

fn subgroup_rows() -> Outcome {
    let required: &[(u8, &[&str])] =
        &[(4, &["Z_2", "Z_3"]), (6, &["Z_2", "E_4"]), (8, &["Z_7", "Z_13"]), (12, &["Z_2", "Z_3", "Z_5"])];
    let mut bad = Vec::new();
    let mut found = 0;
    for &(table, groups) in required {
        let recs = tables::reproduce(table, &SampleOptions::default()).unwrap();
        for g in groups {
            let hit = recs.iter().any(|r| matches!(r, TableRecord::Row { groups, matched: true, .. } if groups == g));
            if hit {
                found += 1;
            } else {
                bad.push(format!("table {table} {g}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{found} of 9 subgroup types matched; missing: {bad:?}"))
}

fn subspace_codes() -> Outcome {
    let ws = Workspace::fixture("dhs").unwrap();
    let mut rows = Vec::new();
    let trivial = Subgroup::trivial(ws.graph.n());
    let gens = read_generators(
        std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/dhs_e25.gens")),
        ws.graph.n(),
    )
    .unwrap();
    let mut subs = vec![trivial, socode::pipeline::subgroup_from_generators(&ws, gens).unwrap()];
    subs.extend(sample(&ws, &["Z_5:Z_4", "Z_10"], 400));
    let mut all_so = true;
    for sub in &subs {
        let qs = ws.quotients(&sub.partition).unwrap();
        match subspace_row(&ws, sub, &qs, &[1, 4], 2, ROW_SPACE_CAP) {
            Ok(r) => {
                all_so &= r.self_orthogonal;
                rows.push((sub.label.clone(), r.parameters));
            }
            Err(e) => {
                all_so = false;
                rows.push((sub.label.clone(), format!("error: {e}")));
            }
        }
    }
    let targets: &[(&str, &[&str])] = &[
        ("I", &["(200,3,22,{0,22,44})_2"]),
        ("E_25", &["(8,8,1,{0,1,2,3,4})_2"]),
        ("Z_5:Z_4", &["(10,4,1,{0,1,2})_2", "(10,5,1,{0,1,2})_2"]),
        ("Z_10", &["(20,3,2,{0,1,2})_2"]),
    ];
    let mut missing = Vec::new();
    for (g, want) in targets {
        if !rows.iter().any(|(l, s)| l == g && want.contains(&s.as_str())) {
            let got: BTreeSet<&str> = rows.iter().filter(|(l, _)| l == g).map(|(_, s)| s.as_str()).collect();
            missing.push(format!("{g} wants {} got {got:?}", want.join(" or ")));
        }
    }
    outcome(
        missing.is_empty() && all_so,
        format!("{} outputs, all self-orthogonal: {all_so}; missing: {missing:?}", rows.len()),
    )
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize) -> Subspace {
    let k = rng.random_range(0..=n);
    let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..2)).collect()).collect();
    if rows.is_empty() {
        return Subspace::zero(n, 2).unwrap();
    }
    Subspace::new(&Mat::from_rows(&rows, 2).unwrap()).unwrap()
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sources = [("doro", 2, 2), ("hadamard48", 1, 3), ("dodd4", 3, 3), ("foster", 5, 2), ("dgewirtz", 1, 2)];
    let parents: Vec<LinearCode> = sources
        .iter()
        .map(|&(name, i, p)| trivial_code(&Workspace::fixture(name).unwrap(), i, p).unwrap())
        .collect();
    let mut code_bad = 0;
    let mut tried = 0;
    while tried < 50 {
        let parent = &parents[tried % parents.len()];
        let k = rng.random_range(1..=parent.k().min(16));
        let msgs: Vec<Vec<u32>> =
            (0..k).map(|_| (0..parent.k()).map(|_| rng.random_range(0..parent.p())).collect()).collect();
        let sub = parent.subcode(&msgs).unwrap();
        if sub.k() == 0 {
            continue;
        }
        tried += 1;
        let bz = minimum_distance_by(&sub, DistanceMethod::BrouwerZimmermann).unwrap();
        let ex = minimum_distance_by(&sub, DistanceMethod::Exhaustive).unwrap();
        code_bad += usize::from(bz.d != ex.d || bz.lower != bz.upper);
    }
    let mut sub_bad = 0;
    for _ in 0..200 {
        let u = random_subspace(&mut rng, 10);
        let w = random_subspace(&mut rng, 10);
        let explicit = u.sum(&w).unwrap().dim() - u.intersection(&w).unwrap().dim();
        sub_bad += usize::from(subspace_distance(&u, &w).unwrap() != explicit);
    }
    outcome(
        code_bad == 0 && sub_bad == 0,
        format!("distance mismatches {code_bad}/50 subcodes; subspace mismatches {sub_bad}/200 pairs"),
    )
}

fn remarks() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let doro = trivial_code(&Workspace::fixture("doro").unwrap(), 2, 2).unwrap();
    let r = socode_core::codes::report(&doro).unwrap();
    let c1 = r.projective && r.two_weight == Some((32, 40));
    notes.push(format!("doro projective two-weight(32,40): {c1}"));
    ok &= c1;

    let h = Workspace::fixture("hadamard48").unwrap();
    let c2 = sample(&h, &["6"], 200).iter().any(|s| {
        let qs = h.quotients(&s.partition).unwrap();
        code_row(&h, s, &qs, 1, 2).is_ok_and(|r| r.nkd() == (8, 4, Some(4)) && r.self_dual)
    });
    notes.push(format!("hadamard48 order 6 [8,4,4]_2 self-dual: {c2}"));
    ok &= c2;

    let f = Workspace::fixture("foster").unwrap();
    let c3 = sample(&f, &["Z_5"], 200).iter().any(|s| {
        let qs = f.quotients(&s.partition).unwrap();
        code_row(&f, s, &qs, 5, 2)
            .is_ok_and(|r| r.nkd() == (18, 4, Some(4)) && r.two_weight == Some((4, 8)) && !r.projective)
    });
    notes.push(format!("foster Z_5 [18,4,4]_2 two-weight(4,8) non-projective: {c3}"));
    ok &= c3;

    let g = Workspace::fixture("dgewirtz").unwrap();
    let target = SrgParameters { v: 56, k: 10, lambda: 0, mu: 2 };
    let c4 = sample(&g, &["Z_2"], 200).iter().any(|s| {
        let qs = g.quotients(&s.partition).unwrap();
        let Ok(row) = code_row(&g, s, &qs, 1, 2) else { return false };
        row.nkd() == (56, 20, Some(10))
            && row.code.as_ref().is_some_and(|c| {
                scan_support_graphs(c, 10).is_ok_and(|found| found.iter().any(|(_, srg)| *srg == target))
            })
    });
    notes.push(format!("dgewirtz Z_2 [56,20,10]_2 weight-10 supports give SRG(56,10,0,2): {c4}"));
    ok &= c4;

    outcome(ok, notes.join("; "))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "intersection tables", intersection_tables()));
    results.push((2, "trivial-group codes with certified d", trivial_codes()));
    let (gram, identity) = gram_and_identity();
    results.push((3, "gram zero on every code", gram));
    results.push((4, "quotient identity", identity));
    results.push((5, "subgroup rows exist", subgroup_rows()));
    results.push((6, "subspace codes", subspace_codes()));
    results.push((7, "oracle equivalence", oracles()));
    results.push((8, "remark-level structure", remarks()));
    let mut failures = 0;
    for (n, name, o) in &results {
        failures += usize::from(!o.pass);
        println!("{} criterion {n} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/{} pass in {:.1}s", results.len() - failures, results.len(), start.elapsed().as_secs_f64());
    if failures > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use socode_core::groups::SubgroupTarget;
use socode_core::subspaces::ROW_SPACE_CAP;

use socode::formats::{generator_text, read_generators, read_partition, resolve_graph};
use socode::pipeline::{self, GroupSource, Subgroup, Workspace};
use socode::tables::{self, SampleOptions, TableRecord};

#[derive(Parser)]
#[command(name = "socode", version, about = "Self-orthogonal codes from distance-regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check distance-regularity and print the intersection array and p_ii^k.
    Verify {
        /// Fixture name, construction (cycle:N, complete:N, doubled-odd:K,
        /// paley-hadamard:Q) or graph file.
        graph: Option<String>,
        #[arg(long, value_name = "PATH", conflicts_with = "graph")]
        graph6: Option<PathBuf>,
    },
    /// Codes over F_p spanned by the quotient matrices.
    Codes {
        graph: String,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        sel: Selection,
        /// Write each generator matrix to DIR/<graph>_<group>_<i>_<p>.gen.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Codes over Z_m with module type from the Smith form.
    RingCodes {
        graph: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        sel: Selection,
    },
    /// Subspace codes from the algebra generated by several quotients.
    Subspace {
        graph: String,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        sel: Selection,
        /// Upper bound on the number of algebra elements enumerated.
        #[arg(long, default_value_t = ROW_SPACE_CAP)]
        cap: u128,
    },
    /// Recompute a reference table and diff it.
    ReproduceTable {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=14))]
        table: u8,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Args)]
struct Selection {
    /// Relation indices, comma separated.
    #[arg(long = "I", value_delimiter = ',')]
    indices: Vec<usize>,
    /// Use the discrete partition.
    #[arg(long, value_name = "trivial", value_parser = ["trivial"])]
    group: Option<String>,
    /// Permutation generators, one per line, in cycle or image notation.
    #[arg(long, value_name = "PATH")]
    group_file: Option<PathBuf>,
    /// Explicit vertex partition, one cell per line.
    #[arg(long, value_name = "PATH")]
    partition_file: Option<PathBuf>,
    /// Sample subgroups of these orders or types (e.g. 5, Z_10, E_4).
    #[arg(long, value_delimiter = ',')]
    sample: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
}

impl Selection {
    fn source(&self, n: usize) -> Result<GroupSource> {
        let given = [self.group.is_some(), self.group_file.is_some(), self.partition_file.is_some(), !self.sample.is_empty()];
        if given.iter().filter(|&&g| g).count() > 1 {
            bail!("use only one of --group, --group-file, --partition-file and --sample");
        }
        if let Some(path) = &self.group_file {
            let gens = read_generators(path, n).with_context(|| format!("reading {}", path.display()))?;
            return Ok(GroupSource::Generators(gens));
        }
        if let Some(path) = &self.partition_file {
            let p = read_partition(path, n).with_context(|| format!("reading {}", path.display()))?;
            return Ok(GroupSource::Partition(p));
        }
        if !self.sample.is_empty() {
            let targets = self.sample.iter().map(|s| s.parse::<SubgroupTarget>()).collect::<socode_core::Result<_>>()?;
            return Ok(GroupSource::Sample { targets, seed: self.seed, trials: self.trials });
        }
        Ok(GroupSource::Trivial)
    }

    fn indices(&self) -> Option<&[usize]> {
        (!self.indices.is_empty()).then_some(self.indices.as_slice())
    }
}

struct Out {
    json: bool,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn emit<T: Serialize>(&mut self, kind: &str, rec: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            let mut v = serde_json::to_value(rec)?;
            if let Some(obj) = v.as_object_mut() {
                obj.entry("kind").or_insert_with(|| json!(kind));
            }
            writeln!(self.stdout, "{v}")?;
        } else {
            writeln!(self.stdout, "{}", text())?;
        }
        Ok(())
    }
}

fn workspace(source: &str) -> Result<Workspace> {
    let (name, g) = resolve_graph(source)?;
    Workspace::new(&name, g)
}

fn subgroups(ws: &Workspace, sel: &Selection) -> Result<Vec<Subgroup>> {
    pipeline::resolve_subgroups(ws, &sel.source(ws.graph.n())?)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let mut out = Out { json: cli.json, stdout: io::stdout().lock() };
    match cli.command {
        Command::Verify { graph, graph6 } => {
            let ws = match (graph, graph6) {
                (_, Some(path)) => {
                    let g = socode::formats::read_graph(&path)?;
                    let name = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
                    Workspace::new(&name, g)?
                }
                (Some(src), None) => workspace(&src)?,
                (None, None) => bail!("give a graph or --graph6 PATH"),
            };
            let rec = pipeline::verify(&ws);
            out.emit("verify", &rec, || {
                let mut s = format!("{}: {} vertices, diameter {}, {}", rec.graph, rec.vertices, rec.diameter, rec.array);
                for (i, row) in rec.p_ii.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                    s.push_str(&format!("\n  p_{i}{i}^k: {}", cells.join(" ")));
                }
                s
            })?;
            Ok(rec.axioms)
        }
        Command::Codes { graph, p, sel, export } => {
            let ws = workspace(&graph)?;
            let subs = subgroups(&ws, &sel)?;
            let rows = pipeline::code_rows(&ws, &subs, sel.indices(), p)?;
            if let Some(dir) = &export {
                std::fs::create_dir_all(dir)?;
            }
            for r in &rows {
                if let (Some(dir), Some(code)) = (&export, &r.code) {
                    let file = dir.join(format!("{}_{}_{}_{}.gen", r.graph, r.subgroup.replace([':', ' '], "-"), r.i, r.p));
                    std::fs::write(&file, generator_text(code.generator()))?;
                }
                out.emit("code", r, || {
                    let mut flags = Vec::new();
                    if r.self_dual {
                        flags.push("self-dual".to_string());
                    }
                    if r.projective {
                        flags.push("projective".to_string());
                    }
                    if let Some((a, b)) = r.two_weight {
                        flags.push(format!("two-weight({a},{b})"));
                    }
                    format!("{}, {}, {} {}", r.subgroup, r.i, r.parameters, flags.join(" ")).trim_end().to_string()
                })?;
            }
            Ok(true)
        }
        Command::RingCodes { graph, m, sel } => {
            let ws = workspace(&graph)?;
            let subs = subgroups(&ws, &sel)?;
            for r in pipeline::ring_rows(&ws, &subs, sel.indices(), m)? {
                out.emit("ring_code", &r, || {
                    let d = r.min_weight.map_or("-".into(), |d| d.to_string());
                    format!("{}, {}, Z_{}^{} type {} size {} d={}", r.subgroup, r.i, r.m, r.n, r.module_type, r.size, d)
                })?;
            }
            Ok(true)
        }
        Command::Subspace { graph, p, sel, cap } => {
            let ws = workspace(&graph)?;
            let Some(indices) = sel.indices() else { bail!("subspace needs --I") };
            let subs = subgroups(&ws, &sel)?;
            for r in pipeline::subspace_rows(&ws, &subs, indices, p, cap)? {
                out.emit("subspace", &r, || {
                    format!("{}, {:?}, {} algebra dim {}", r.subgroup, r.indices, r.parameters, r.algebra_dim)
                })?;
            }
            Ok(true)
        }
        Command::ReproduceTable { table, seed, trials } => {
            let opts = SampleOptions { seed, trials, ..SampleOptions::default() };
            let mut pass = true;
            for rec in tables::reproduce(table, &opts)? {
                if let TableRecord::Summary { pass: p, .. } = &rec {
                    pass &= p;
                }
                out.emit("table", &rec, || table_text(&rec))?;
            }
            Ok(pass)
        }
    }
}

fn table_text(rec: &TableRecord) -> String {
    match rec {
        TableRecord::Cell { i, k, expected, found, .. } => {
            let f = found.map_or("missing".into(), |v| v.to_string());
            format!("p_{i}{i}^{k}: expected {expected}, found {f}")
        }
        TableRecord::Row { groups, relations, expected, found, matched, .. } => {
            let mark = if *matched { "ok  " } else { "MISS" };
            format!("{mark} {groups} I={relations:?} {expected}  found: {}", found.join("; "))
        }
        TableRecord::Summary { table, fixture, checked, matched, pass, note } => {
            let verdict = if *pass { "PASS" } else { "FAIL" };
            format!("table {table} ({fixture}): {matched}/{checked} {verdict} {note}").trim_end().to_string()
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

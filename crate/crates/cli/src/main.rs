use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use plink_core::fixtures::Fixture;
use plink_core::homology::{
    has_relative_torsion, homology_group, relative_homology_group, TorsionMode,
};
use plink_core::io;
use plink_core::lp::LpStatus;
use plink_core::ohcp::{self, OhcpInstance};
use plink_core::pipeline::{self, EdgeOrder, GatePolicy, ReduceOptions};
use plink_core::tu::{determinant_tu, is_totally_unimodular, TuStrategy};
use plink_core::{
    boundary_matrix, contract_edge_with, Simplex, SimplicialComplex, SubcomplexPair, VertexId,
    WeightMerge,
};

/// Edge contraction, homology, total unimodularity and optimal homologous chains.
#[derive(Parser, Debug)]
#[command(name = "plink", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomised generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work budget for searches (circuit steps, pairs, pivots or B&B nodes).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// A `.scx` file or a fixture name such as `mobius(5)`.
    input: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-link and link conditions of one edge or of every edge.
    LinkCheck {
        #[command(flatten)]
        input: Input,
        /// Edge as "a,b"; all edges when omitted.
        #[arg(long)]
        edge: Option<String>,
        /// Largest p to report.
        #[arg(long)]
        max_p: Option<usize>,
    },
    /// Contract one edge and write the result.
    Contract {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        edge: String,
        /// Surviving endpoint; the smaller one by default.
        #[arg(long)]
        keep: Option<VertexId>,
        #[arg(long, value_enum, default_value_t = Merge::Keep)]
        merge: Merge,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integer homology H_p.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
    },
    /// H_p(L, L0) for a given subcomplex, or a search for relative torsion.
    RelHomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        /// L0 as a `.scx` file; the input is then L.
        #[arg(long)]
        subcomplex: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Tu)]
        mode: Mode,
    },
    /// Total unimodularity of the boundary matrix [∂_p].
    TuCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Circuit)]
        strategy: Strategy,
        /// Largest minor order for the determinant strategy.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Optimal homologous chain of a `.chn` chain.
    Ohcp {
        #[command(flatten)]
        input: Input,
        chain: PathBuf,
        #[arg(long, value_enum, default_value_t = Solve::Lp)]
        solve: Solve,
        /// Contract this edge ("a,b", smaller vertex kept) before solving.
        #[arg(long)]
        contract: Option<String>,
        #[arg(long, value_enum, default_value_t = Merge::Keep)]
        merge: Merge,
    },
    /// Greedy gated contraction.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// "full" or "p=2,1".
        #[arg(long, default_value = "full")]
        gate: String,
        #[arg(long, value_enum, default_value_t = Order::Lex)]
        order: Order,
        #[arg(long, default_value_t = usize::MAX)]
        max_steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        log: Option<PathBuf>,
        /// Dimensions for the before/after report, e.g. "1,2".
        #[arg(long)]
        report: Option<String>,
    },
    /// Write a named fixture as `.scx`; `random(n)` uses --seed.
    Generate {
        fixture: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Merge {
    Keep,
    Min,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Oracle,
    Tu,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Circuit,
    Determinant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Solve {
    Lp,
    Ilp,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Lightest,
}

/// Result of a command: the report and whether the computation was
/// positive, negative (with witness) or inconclusive.
enum Outcome {
    Ok,
    Negative,
    Inconclusive,
}

impl Outcome {
    fn code(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

struct Report {
    outcome: Outcome,
    json: Value,
    text: String,
}

fn load(input: &Input, seed: u64) -> anyhow::Result<SimplicialComplex> {
    let path = Path::new(&input.input);
    if path.exists() {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return io::parse_scx(&text).with_context(|| format!("parsing {}", path.display()));
    }
    generate(&input.input, seed)
        .map_err(|e| anyhow!("{} is neither a file nor a fixture: {e}", input.input))
}

fn generate(name: &str, seed: u64) -> anyhow::Result<SimplicialComplex> {
    if let Some(arg) = name
        .strip_prefix("random(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let n: usize = arg.trim().parse().context("random(n) needs an integer")?;
        return Ok(random_complex(n, seed));
    }
    Ok(name.parse::<Fixture>()?.generate()?)
}

/// `n` random triangles on about `n/2 + 3` vertices.
fn random_complex(n: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (n / 2 + 3) as VertexId;
    let mut triples = Vec::new();
    for a in 1..=v {
        for b in a + 1..=v {
            for c in b + 1..=v {
                triples.push([a, b, c]);
            }
        }
    }
    triples.shuffle(&mut rng);
    triples.truncate(n);
    SimplicialComplex::from_maximal(triples).expect("distinct vertices")
}

fn parse_edge(s: &str) -> anyhow::Result<Simplex> {
    let vs: Vec<VertexId> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("bad vertex {t:?}")))
        .collect::<anyhow::Result<_>>()?;
    if vs.len() != 2 {
        bail!("an edge needs two vertices, got {s:?}");
    }
    Ok(Simplex::edge(vs[0], vs[1])?)
}

fn parse_dims(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .with_context(|| format!("bad dimension {t:?}"))
        })
        .collect()
}

fn parse_gate(s: &str) -> anyhow::Result<GatePolicy> {
    if s == "full" {
        return Ok(GatePolicy::full_link());
    }
    let Some(list) = s.strip_prefix("p=") else {
        bail!("gate must be \"full\" or \"p=<list>\"")
    };
    Ok(GatePolicy::listed(parse_dims(list)?)?)
}

fn merge_rule(m: Merge) -> WeightMerge {
    match m {
        Merge::Keep => WeightMerge::KeepSurvivor,
        Merge::Min => WeightMerge::Minimum,
    }
}

fn write_or_print(path: &Option<PathBuf>, body: &str) -> anyhow::Result<Option<String>> {
    match path {
        Some(p) => {
            fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(body.to_string())),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::LinkCheck { input, edge, max_p } => {
            let k = load(input, seed)?;
            let top = max_p.unwrap_or_else(|| k.dim().unwrap_or(0));
            let mut scan = pipeline::scan_edges(&k, top);
            if let Some(e) = edge {
                let e = parse_edge(e)?;
                if !k.contains(&e) {
                    bail!("edge {e} is not in the complex");
                }
                scan.retain(|s, _| *s == e);
            }
            let mut full = BTreeMap::new();
            let mut violations = BTreeMap::new();
            for e in scan.keys() {
                let links = k.edge_links(e)?;
                full.insert(e.clone(), links.satisfies_all());
                violations.insert(e.clone(), links.violations().cloned().collect::<Vec<_>>());
            }
            let mut text = String::new();
            for (e, c) in &scan {
                let ps: Vec<String> = c.iter().map(|(p, v)| format!("{p}:{v}")).collect();
                text += &format!("{e}  link={}  p-link {}\n", full[e], ps.join(" "));
                if !full[e] && edge.is_some() {
                    let vs: Vec<String> = violations[e].iter().map(|s| s.to_string()).collect();
                    text += &format!("  violations: {}\n", vs.join(" "));
                }
            }
            let mut json = json!({ "edges": io::scan_json(&scan, &full) });
            let mut outcome = Outcome::Ok;
            if edge.is_some() {
                let (e, ok) = full.iter().next().expect("one edge");
                if !ok {
                    outcome = Outcome::Negative;
                }
                json["violations"] =
                    Value::Array(violations[e].iter().map(io::simplex_json).collect());
            }
            Ok(Report {
                outcome,
                json,
                text,
            })
        }
        Command::Contract {
            input,
            edge,
            keep,
            merge,
            output,
        } => {
            let k = load(input, seed)?;
            let e = parse_edge(edge)?;
            let keep = keep.unwrap_or(e.vertices()[0]);
            let links = k.edge_links(&e).ok();
            let c = contract_edge_with(&k, &e, keep, merge_rule(*merge))?;
            let body = io::serialize_scx(&c.target);
            let printed = write_or_print(output, &body)?;
            let top = k.dim().unwrap_or(0);
            let conditions: BTreeMap<usize, bool> = links
                .map(|l| (0..=top).map(|p| (p, l.satisfies(p as i64))).collect())
                .unwrap_or_default();
            let json = json!({
                "edge": io::simplex_json(&e),
                "kept": keep,
                "p_link": io::conditions_json(&conditions),
                "weight_conflicts": c.weight_conflicts.iter().map(io::simplex_json).collect::<Vec<_>>(),
                "simplices": { "before": k.len(), "after": c.target.len() },
                "complex": printed.clone(),
            });
            let text = printed.unwrap_or_else(|| {
                format!(
                    "contracted {e}: {} -> {} simplices\n",
                    k.len(),
                    c.target.len()
                )
            });
            Ok(Report {
                outcome: Outcome::Ok,
                json,
                text,
            })
        }
        Command::Homology { input, p } => {
            let k = load(input, seed)?;
            let g = homology_group(&k, *p)?;
            Ok(Report {
                outcome: Outcome::Ok,
                json: io::homology_json(&g),
                text: format!("{g}\n"),
            })
        }
        Command::RelHomology {
            input,
            p,
            subcomplex,
            mode,
        } => {
            let k = load(input, seed)?;
            if let Some(path) = subcomplex {
                let l0 = io::parse_scx(
                    &fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?,
                )?;
                let g = relative_homology_group(&SubcomplexPair::new(k, l0, *p)?);
                let text = format!(
                    "{}\n",
                    g.to_string()
                        .replacen(&format!("H_{p}"), &format!("H_{p}(L, L0)"), 1)
                );
                let outcome = if g.is_torsion_free() {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                };
                return Ok(Report {
                    outcome,
                    json: io::homology_json(&g),
                    text,
                });
            }
            let (mode, budget) = match mode {
                Mode::Oracle => (TorsionMode::Oracle, cli.budget.unwrap_or(1_000_000)),
                Mode::Tu => (
                    TorsionMode::Tu,
                    cli.budget.unwrap_or(pipeline::DEFAULT_TU_BUDGET),
                ),
            };
            let v = has_relative_torsion(&k, *p, mode, budget)?;
            let m = boundary_matrix(&k, p + 1)?;
            let json = io::torsion_verdict_json(*p, &m, &v);
            let (outcome, text) = match v.decided() {
                Some(true) => (
                    Outcome::Negative,
                    format!("relative torsion in dimension {p}\n{}\n", json["witness"]),
                ),
                Some(false) => (
                    Outcome::Ok,
                    format!("no relative torsion in dimension {p}\n"),
                ),
                None => (
                    Outcome::Inconclusive,
                    "inconclusive: budget exhausted\n".to_string(),
                ),
            };
            Ok(Report {
                outcome,
                json,
                text,
            })
        }
        Command::TuCheck {
            input,
            p,
            strategy,
            max_order,
        } => {
            let k = load(input, seed)?;
            let m = boundary_matrix(&k, *p)?;
            let budget = cli.budget.unwrap_or(pipeline::DEFAULT_TU_BUDGET);
            let r = match strategy {
                Strategy::Circuit => is_totally_unimodular(&m.entries, TuStrategy::Circuit, budget),
                Strategy::Determinant => determinant_tu(&m.entries, *max_order, budget),
            };
            let json = io::tu_report_json(*p, &m, &r, budget);
            let (outcome, text) = match r.decided() {
                Some(true) => (Outcome::Ok, "true\n".to_string()),
                Some(false) => (
                    Outcome::Negative,
                    format!("false\nwitness: {}\n", json["witness"]),
                ),
                None => (Outcome::Inconclusive, "inconclusive\n".to_string()),
            };
            Ok(Report {
                outcome,
                json,
                text,
            })
        }
        Command::Ohcp {
            input,
            chain,
            solve,
            contract,
            merge,
        } => {
            let k = load(input, seed)?;
            let text = fs::read_to_string(chain)
                .with_context(|| format!("reading {}", chain.display()))?;
            let c = io::parse_chn(&text, None)?;
            if c.terms().any(|(_, v)| !v.is_integer()) {
                bail!("the input chain must have integer coefficients");
            }
            let mut inst = OhcpInstance::new(k, c.dim(), c.map(|v| v.to_integer()))?;
            let mut conflicts = Vec::new();
            if let Some(e) = contract {
                let e = parse_edge(e)?;
                let (pushed, contraction) =
                    inst.push_forward(&e, e.vertices()[0], merge_rule(*merge))?;
                conflicts = contraction
                    .weight_conflicts
                    .iter()
                    .map(io::simplex_json)
                    .collect();
                inst = pushed;
            }
            let program = ohcp::formulate(&inst);
            let mut json = json!({ "p": inst.p, "weight_conflicts": conflicts });
            let mut text = String::new();
            let mut outcome = Outcome::Ok;
            let mut record = |name: &str, s: ohcp::LpSolution| {
                let obj = s
                    .objective
                    .as_ref()
                    .map(|o| format!("{}/{}", o.numer(), o.denom()))
                    .unwrap_or_else(|| "-".into());
                text += &format!("{name}: {} objective {obj}\n", io::status_name(s.status));
                match s.status {
                    LpStatus::Optimal => {}
                    LpStatus::BudgetExceeded => outcome = Outcome::Inconclusive,
                    _ => {
                        if !matches!(outcome, Outcome::Inconclusive) {
                            outcome = Outcome::Negative
                        }
                    }
                }
                json[name] = io::lp_solution_json(&s);
            };
            if matches!(solve, Solve::Lp | Solve::Both) {
                record(
                    "lp",
                    ohcp::solve_lp_exact(&program, cli.budget.unwrap_or(ohcp::DEFAULT_LP_BUDGET)),
                );
            }
            if matches!(solve, Solve::Ilp | Solve::Both) {
                record(
                    "ilp",
                    ohcp::solve_ilp(&program, cli.budget.unwrap_or(ohcp::DEFAULT_ILP_BUDGET)),
                );
            }
            // Single-solve reports also carry the solution at the top level.
            let single = match solve {
                Solve::Lp => Some("lp"),
                Solve::Ilp => Some("ilp"),
                Solve::Both => None,
            };
            if let Some(name) = single {
                let s = json[name].clone();
                for key in ["status", "objective", "chain", "certificate"] {
                    json[key] = s[key].clone();
                }
            }
            Ok(Report {
                outcome,
                json,
                text,
            })
        }
        Command::Reduce {
            input,
            gate,
            order,
            max_steps,
            output,
            log,
            report,
        } => {
            let k = load(input, seed)?;
            let policy = parse_gate(gate)?;
            let dims = report
                .as_deref()
                .map(parse_dims)
                .transpose()?
                .unwrap_or_default();
            let order = match order {
                Order::Lex => EdgeOrder::Lexicographic,
                Order::Lightest => EdgeOrder::LightestFirst,
            };
            let opts = ReduceOptions {
                order,
                max_steps: *max_steps,
                snapshot_dims: Vec::new(),
            };
            let (out, clog) = pipeline::reduce_with(&k, &policy, &opts);
            if let Some(path) = log {
                fs::write(path, serde_json::to_string_pretty(&io::log_json(&clog))?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let printed = write_or_print(output, &io::serialize_scx(&out))?;
            let mut json = json!({
                "steps": clog.steps(),
                "contracted": clog.contracted().map(io::simplex_json).collect::<Vec<_>>(),
                "simplices": { "before": k.len(), "after": out.len() },
                "complex": printed.clone(),
            });
            let mut text = format!(
                "{} contractions: {} -> {} simplices\n",
                clog.steps(),
                k.len(),
                out.len()
            );
            if !dims.is_empty() {
                let r = pipeline::report_with_budget(
                    &k,
                    &out,
                    &dims,
                    cli.budget.unwrap_or(pipeline::DEFAULT_TU_BUDGET),
                );
                for d in &r.dims {
                    text += &format!(
                        "p={}: {} -> {}, TU {:?} -> {:?}\n",
                        d.p, d.before, d.after, d.tu_before, d.tu_after
                    );
                }
                json["report"] = io::topology_report_json(&r);
            }
            if let Some(body) = printed {
                text += &body;
            }
            Ok(Report {
                outcome: Outcome::Ok,
                json,
                text,
            })
        }
        Command::Generate {
            fixture,
            output,
            list,
        } => {
            if *list {
                let mut names: Vec<&str> = Fixture::names().to_vec();
                names.push("random(n)");
                return Ok(Report {
                    outcome: Outcome::Ok,
                    json: json!(names),
                    text: names.join("\n") + "\n",
                });
            }
            let Some(name) = fixture else {
                bail!("generate needs a fixture name (see --list)")
            };
            let k = generate(name, seed)?;
            let printed = write_or_print(output, &io::serialize_scx(&k))?;
            let json = json!({ "fixture": name, "simplices": k.len(), "complex": printed.clone() });
            Ok(Report {
                outcome: Outcome::Ok,
                json,
                text: printed.unwrap_or_default(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("serializable")
                )
            } else {
                write!(out, "{}", r.text)
            };
            ExitCode::from(r.outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

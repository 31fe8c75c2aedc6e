//! Command-line driver: single runs and TOML-configured suites, with
//! optional invariant and oracle audits, a versioned JSON results document,
//! and a fixed-width summary table.

use std::path::PathBuf;
use std::sync::Mutex;

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::decomp::{build_segments, compute_layers};
use crate::graph::{generate, parse_graph, Family, WeightedGraph};
use crate::oracle::{
    audit_dual, audit_payment, coverage_counts, exact_2ecss, verify_mis, OracleBudget,
    OracleError,
};
use crate::primal_dual::{
    approximate_2ecss, boruvka_mst, unweighted_tap, PipelineError, Variant,
};
use crate::report::{
    summary_header, summary_row, AuditSummary, Document, InstanceDescriptor, RunResult,
    SCHEMA_VERSION,
};
use crate::shortcut::{provider_by_name, shortcut_2ecss_log, GreedyConfig};
use crate::sim::{
    cost_d_sqrt, cost_d_sqrt_log, cost_d_sqrt_log2, log_star, sqrt_ceil, Runtime,
    DEFAULT_ROUND_CAP,
};
use crate::tree::root_tree;
use crate::virt::{build_virtual_graph, project_to_original};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_AUDIT: i32 = 5;
pub const EXIT_INTERNAL: i32 = 6;

#[derive(Parser, Debug, Clone)]
#[command(name = "two-ecss", version, about = "2-ECSS approximation harness")]
pub struct Opts {
    /// algorithm to run
    #[arg(long, value_parser = ["base4", "improved2", "unweighted", "shortcut-log"])]
    pub algo: Option<String>,
    /// approximation slack, decimal or fraction (e.g. 0.25 or 1/4)
    #[arg(long, default_value = "0.25")]
    pub epsilon: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// load an instance from a file (vertex-count edge-count header,
    /// 1-indexed "u v w" lines)
    #[arg(long, conflicts_with = "gen")]
    pub graph: Option<PathBuf>,
    /// generate an instance: cycle:n=4 | grid:rows=8,cols=8 |
    /// random2ec:n=64,extra=32[,wmax=9]
    #[arg(long)]
    pub gen: Option<String>,
    #[arg(long, default_value = "tree-native", value_parser = ["tree-native", "bfs-star"])]
    pub provider: String,
    #[arg(long, default_value = "none", value_parser = ["none", "invariants", "oracle"])]
    pub check: String,
    /// write the results document here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub verbosity: u8,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = DEFAULT_ROUND_CAP)]
    pub round_cap: usize,
    /// run a TOML suite instead of a single instance
    #[arg(long, conflicts_with_all = ["gen", "graph", "algo"])]
    pub suite: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
    #[error("infeasible input: {0}")]
    Infeasible(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// Where a run's instance comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Gen(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub source: Source,
    pub seed: u64,
    pub algo: String,
    pub epsilon: String,
    pub provider: String,
    pub check: String,
    pub round_cap: usize,
}

/// "a/b" or a decimal like "0.25", as an exact rational in (0, 1].
pub fn parse_epsilon(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse epsilon {text:?}"));
    let r = if let Some((a, b)) = text.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num, den)
    } else if let Some((int, frac)) = text.split_once('.') {
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let frac: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        BigRational::new(int * &scale + frac, scale)
    } else {
        let int: BigInt = text.trim().parse().map_err(|_| bad())?;
        BigRational::from_integer(int)
    };
    if !r.is_positive() {
        return Err(CliError::Usage(format!("epsilon must be positive, got {text}")));
    }
    Ok(r)
}

/// "family:key=value,…" into a generator family.
pub fn parse_family(text: &str) -> Result<Family, CliError> {
    let bad = |msg: &str| CliError::Usage(format!("bad --gen {text:?}: {msg}"));
    let (name, params) = text.split_once(':').unwrap_or((text, ""));
    let mut kv = std::collections::BTreeMap::new();
    for item in params.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let v: u64 = v.parse().map_err(|_| bad("expected integer value"))?;
        kv.insert(k.to_string(), v);
    }
    let get = |k: &str| kv.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
    match name {
        "cycle" => Ok(Family::Cycle { n: get("n")? as usize }),
        "grid" => Ok(Family::Grid { rows: get("rows")? as usize, cols: get("cols")? as usize }),
        "random2ec" => Ok(Family::Random2Ec {
            n: get("n")? as usize,
            extra_edges: get("extra")? as usize,
            weight_max: kv.get("wmax").copied().unwrap_or(9),
        }),
        other => Err(bad(&format!("unknown family {other:?}"))),
    }
}

fn load_graph(source: &Source, seed: u64) -> Result<(WeightedGraph, String), CliError> {
    match source {
        Source::Gen(text) => {
            let family = parse_family(text)?;
            let g = generate(family, seed)
                .map_err(|e| CliError::Usage(format!("generator: {e}")))?;
            Ok((g, text.clone()))
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let g =
                parse_graph(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok((g, format!("file:{}", path.display())))
        }
    }
}

struct Audited {
    weight: u64,
    edges: usize,
    audit: AuditSummary,
}

fn map_pipeline_err(e: PipelineError) -> CliError {
    match e {
        PipelineError::NotTwoEdgeConnected => {
            CliError::Infeasible("graph is not 2-edge-connected".into())
        }
        other => CliError::Internal(other.to_string()),
    }
}

fn run_algorithm(
    rt: &mut Runtime,
    spec: &RunSpec,
    eps: &BigRational,
    audits: bool,
) -> Result<Audited, CliError> {
    let mut audit = AuditSummary::default();
    match spec.algo.as_str() {
        "base4" | "improved2" => {
            let variant =
                if spec.algo == "base4" { Variant::Base4 } else { Variant::Improved2 };
            let run = approximate_2ecss(rt, eps, variant).map_err(map_pipeline_err)?;
            if audits {
                audit.checks.push("coverage-bounds".into());
                let counts = coverage_counts(&run.inst, &run.reverse.b);
                let factor = variant.cover_factor() as usize;
                for v in 0..run.inst.tree.vertex_count() {
                    if run.dual.y[v] > BigRational::zero() && counts[v] > factor {
                        audit
                            .violations
                            .push(format!("tree edge below {v} covered {} > {factor} times", counts[v]));
                    }
                }
                audit.checks.push("dual-audit".into());
                let report = audit_dual(&run.inst, &run.dual, &run.dual.eps_prime);
                audit.violations.extend(report.violations);
                audit.checks.push("payment-chain".into());
                audit.violations.extend(audit_payment(
                    &run.inst,
                    &run.reverse.b,
                    &run.dual,
                    variant.cover_factor(),
                ));
                audit.checks.push("mis-traces".into());
                for t in &run.reverse.traces {
                    if !verify_mis(&run.inst, t) {
                        audit.violations.push(format!(
                            "reverse-delete trace epoch {} layer {} fails the MIS audit",
                            t.epoch, t.layer
                        ));
                    }
                }
            }
            Ok(Audited { weight: run.result.total_weight(), edges: run.result.len(), audit })
        }
        "unweighted" => {
            let g = rt.graph;
            if !crate::graph::is_two_edge_connected(g) {
                return Err(CliError::Infeasible("graph is not 2-edge-connected".into()));
            }
            let n = g.vertex_count();
            let d = g.diameter();
            crate::sim::bfs_tree(rt, 0).map_err(|e| CliError::Internal(e.to_string()))?;
            let (mst, _) = boruvka_mst(g);
            rt.charge("mst-boruvka", d + sqrt_ceil(n) * log_star(n));
            let tree = root_tree(g, &mst, 0).expect("MST spans the graph");
            let inst = build_virtual_graph(g, tree);
            rt.charge("virtual-graph", cost_d_sqrt(n, d));
            let lay = compute_layers(&inst.tree);
            rt.charge("layers", cost_d_sqrt_log(n, d));
            let seg = build_segments(&inst.tree);
            rt.charge("segments", cost_d_sqrt_log(n, d));
            let (cover, traces) = unweighted_tap(&inst, &lay, &seg);
            rt.charge("unweighted-pass", traces.len().max(1) * cost_d_sqrt(n, d));
            let aug = project_to_original(&inst, &cover)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let result = mst.union(g, &aug);
            if audits {
                audit.checks.push("cover-complete".into());
                if !inst.covers_all(&cover) {
                    audit.violations.push("unweighted cover misses a tree edge".into());
                }
                audit.checks.push("mis-traces".into());
                for t in &traces {
                    if !verify_mis(&inst, t) {
                        audit
                            .violations
                            .push(format!("unweighted trace layer {} fails the MIS audit", t.layer));
                    }
                }
            }
            Ok(Audited { weight: result.total_weight(), edges: result.len(), audit })
        }
        "shortcut-log" => {
            let eps_f = eps.to_f64().filter(|x| *x < 1.0).ok_or_else(|| {
                CliError::Usage("shortcut-log needs epsilon in (0,1)".into())
            })?;
            let provider = provider_by_name(&spec.provider)
                .ok_or_else(|| CliError::Usage(format!("unknown provider {}", spec.provider)))?;
            let cfg = GreedyConfig { eps: eps_f, rng_seed: spec.seed, ..GreedyConfig::default() };
            let run = shortcut_2ecss_log(rt, &cfg, provider.as_ref()).map_err(map_pipeline_err)?;
            if audits {
                audit.checks.push("sample-quality".into());
                for t in run.trace.iter().filter(|t| t.accepted) {
                    if (t.newly_covered as f64)
                        < t.delta / cfg.good_set_divisor * t.sampled_weight as f64
                    {
                        audit.violations.push(format!(
                            "accepted sample at Δ={} below the quality bar",
                            t.delta
                        ));
                    }
                }
            }
            Ok(Audited { weight: run.result.total_weight(), edges: run.result.len(), audit })
        }
        other => Err(CliError::Usage(format!("unknown algorithm {other:?}"))),
    }
}

/// Runs one spec end to end and assembles its result record.
pub fn execute(spec: &RunSpec) -> Result<RunResult, CliError> {
    let (g, family) = load_graph(&spec.source, spec.seed)?;
    let eps = parse_epsilon(&spec.epsilon)?;
    let audits = spec.check != "none";
    let mut rt = Runtime::new(&g);
    rt.round_cap = spec.round_cap;
    let mut outcome = run_algorithm(&mut rt, spec, &eps, audits)?;

    let n = g.vertex_count();
    let d = g.diameter();
    let mut oracle_opt = None;
    let mut ratio = None;
    if spec.check == "oracle" {
        match exact_2ecss(&g, &OracleBudget::default()) {
            Ok(opt) => {
                outcome.audit.checks.push("oracle-ratio".into());
                oracle_opt = Some(opt);
                let r = outcome.weight as f64 / opt as f64;
                ratio = Some(r);
                let eps_f = eps.to_f64().unwrap_or(1.0);
                let bound = match spec.algo.as_str() {
                    "improved2" => Some(5.0 + eps_f),
                    "base4" => Some(9.0 + eps_f),
                    "shortcut-log" => Some(4.0 * (n.max(3) as f64).ln()),
                    _ => None,
                };
                if let Some(b) = bound {
                    if r > b {
                        outcome
                            .audit
                            .violations
                            .push(format!("ratio {r:.4} exceeds the {b:.4} bound"));
                    }
                }
            }
            Err(OracleError::Budget { .. }) => {
                outcome.audit.checks.push("oracle-ratio (skipped: budget)".into());
            }
            Err(e) => return Err(CliError::Internal(e.to_string())),
        }
    }

    let total_rounds = rt.ledger.total_rounds();
    Ok(RunResult {
        schema_version: SCHEMA_VERSION,
        instance: InstanceDescriptor { family, n, m: g.edge_count(), diameter: d, seed: spec.seed },
        algo: spec.algo.clone(),
        epsilon: spec.epsilon.clone(),
        provider: (spec.algo == "shortcut-log").then(|| spec.provider.clone()),
        output_weight: outcome.weight,
        output_edges: outcome.edges,
        oracle_opt,
        ratio,
        total_rounds,
        tier0_rounds: rt.ledger.tier0_rounds(),
        total_messages: rt.ledger.total_messages(),
        normalized_rounds: total_rounds as f64 / cost_d_sqrt_log2(n, d) as f64,
        ledger: rt.ledger.clone(),
        audit: outcome.audit,
    })
}

#[derive(Debug, Deserialize)]
struct SuiteConfig {
    #[serde(default)]
    runs: Vec<SuiteRun>,
}

#[derive(Debug, Clone, Deserialize)]
struct SuiteRun {
    gen: Option<String>,
    graph: Option<String>,
    #[serde(default = "default_seeds")]
    seeds: Vec<u64>,
    algo: String,
    epsilon: Option<String>,
    provider: Option<String>,
    check: Option<String>,
    round_cap: Option<usize>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn suite_specs(cfg: &SuiteConfig, defaults: &Opts) -> Result<Vec<RunSpec>, CliError> {
    let mut specs = Vec::new();
    for run in &cfg.runs {
        let source = match (&run.gen, &run.graph) {
            (Some(g), None) => Source::Gen(g.clone()),
            (None, Some(p)) => Source::File(PathBuf::from(p)),
            _ => {
                return Err(CliError::Usage(
                    "each suite run needs exactly one of gen/graph".into(),
                ))
            }
        };
        for &seed in &run.seeds {
            specs.push(RunSpec {
                source: source.clone(),
                seed,
                algo: run.algo.clone(),
                epsilon: run.epsilon.clone().unwrap_or_else(|| defaults.epsilon.clone()),
                provider: run.provider.clone().unwrap_or_else(|| defaults.provider.clone()),
                check: run.check.clone().unwrap_or_else(|| defaults.check.clone()),
                round_cap: run.round_cap.unwrap_or(defaults.round_cap),
            });
        }
    }
    Ok(specs)
}

/// Executes specs across up to `workers` threads; output order is the
/// deterministic document order regardless of scheduling.
pub fn execute_all(specs: &[RunSpec], workers: usize) -> Result<Vec<RunResult>, CliError> {
    let workers = workers.max(1).min(specs.len().max(1));
    let results: Mutex<Vec<Option<Result<RunResult, CliError>>>> =
        Mutex::new((0..specs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for w in 0..workers {
            let results = &results;
            scope.spawn(move || {
                for (i, spec) in specs.iter().enumerate() {
                    if i % workers != w {
                        continue;
                    }
                    let r = execute(spec);
                    results.lock().unwrap()[i] = Some(r);
                }
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every spec ran"))
        .collect()
}

fn emit(doc: &Document, opts: &Opts) -> Result<(), CliError> {
    let bytes = doc.to_bytes();
    match &opts.out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn run(opts: &Opts) -> Result<i32, CliError> {
    let started = std::time::Instant::now();
    let specs = if let Some(path) = &opts.suite {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let cfg: SuiteConfig =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("suite: {e}")))?;
        suite_specs(&cfg, opts)?
    } else {
        let algo = opts
            .algo
            .clone()
            .ok_or_else(|| CliError::Usage("--algo is required (or use --suite)".into()))?;
        let source = match (&opts.gen, &opts.graph) {
            (Some(g), None) => Source::Gen(g.clone()),
            (None, Some(p)) => Source::File(p.clone()),
            _ => return Err(CliError::Usage("give exactly one of --gen/--graph".into())),
        };
        vec![RunSpec {
            source,
            seed: opts.seed,
            algo,
            epsilon: opts.epsilon.clone(),
            provider: opts.provider.clone(),
            check: opts.check.clone(),
            round_cap: opts.round_cap,
        }]
    };
    let results = execute_all(&specs, opts.workers)?;
    let wall_ms = started.elapsed().as_millis();
    let failed = results.iter().any(|r| !r.passed());
    let doc = Document::new(results);
    if opts.verbosity >= 1 {
        eprintln!("{}", summary_header());
        for r in &doc.runs {
            eprintln!("{}", summary_row(r, wall_ms));
        }
    }
    if opts.verbosity >= 2 {
        for r in &doc.runs {
            for e in &r.ledger.entries {
                eprintln!(
                    "  {}/{} tier{} {}: {} rounds, {} messages",
                    r.instance.family, r.instance.seed, e.tier, e.primitive, e.rounds, e.messages
                );
            }
        }
    }
    emit(&doc, opts)?;
    Ok(if failed { EXIT_AUDIT } else { EXIT_OK })
}

pub fn main(argv: impl Iterator<Item = String>) -> i32 {
    let opts = match Opts::try_parse_from(argv) {
        Ok(o) => o,
        Err(e) => {
            // clap renders help/version through the same error path
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

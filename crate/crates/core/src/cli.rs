//! Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::certificates::{
    find_2bad_pair, find_bad_triple, find_tree_bad, is_2bad, CertError, Certificate,
};
use crate::graph::{self, read_graph, write_graph, Graph, GraphError};
use crate::harness::{self, CorpusSpec, HarnessError, InstanceFilter, SweepConfig};
use crate::lists::{read_lists, sample_assignment, write_lists, ListAssignment, ListError, SeedSpec};
use crate::moments::{self, BoundReport, MomentsError, Regime, RegimeParams};
use crate::solver::{extract_critical, solve, SolverError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lists(#[from] ListError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Moments(#[from] MomentsError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Parser)]
#[command(name = "listcolor", version, about = "List coloring from random lists")]
struct Cli {
    /// Base seed for all randomness.
    #[arg(long, global = true, env = "LISTCOLOR_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Draw a random k-list assignment for a graph.
    Sample(SampleArgs),
    /// Decide whether a graph is colorable from its lists.
    Solve(InstanceArgs),
    /// Produce a certificate of colorability or of failure.
    Certify(CertifyArgs),
    /// Evaluate an analytic bound or regime threshold.
    Bound(Box<BoundArgs>),
    /// Run a threshold sweep from a JSON config.
    Sweep(SweepArgs),
    /// Check the certificate characterizations on a small-graph corpus.
    VerifyLemmas(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    CliqueUnion,
    PowerCycle,
    CompleteBipartite,
    CompleteMultipartite,
    Cycle,
    Path,
    Complete,
    Petersen,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Vertex count (per side or part for the multipartite families).
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    delta: usize,
    /// Power of the cycle.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    parts: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    sigma: u32,
    /// Trial index mixed into the seed.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InstanceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    /// Print the coloring as JSON after the status line.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertKind {
    /// Coloring when colorable, otherwise the first failure certificate found.
    Auto,
    Coloring,
    Critical,
    BadTriple,
    TwoBadPair,
    TreeBad,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    kind: CertKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundName {
    IdenticalCliques,
    IdenticalCliquesExact,
    AlternatingPaths,
    BadTripleProbability,
    ProperTripleCount,
    BadTripleSum,
    Chebyshev,
    PiCliqueUnion,
    PairProbability,
    PairCount,
    PairSum,
    TreeBad,
    BlockedVertex,
    /// One regime (`--regime`) or every applicable regime.
    Regime,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    bound: BoundName,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    sigma: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    /// Girth.
    #[arg(long)]
    g: Option<u64>,
    #[arg(long)]
    r_min: Option<u64>,
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    m_lo: Option<u64>,
    #[arg(long)]
    m_hi: Option<u64>,
    #[arg(long)]
    l_max: Option<u64>,
    #[arg(long)]
    expectation: Option<f64>,
    #[arg(long)]
    pi: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Regime name for `--bound regime`; all applicable regimes if absent.
    #[arg(long)]
    regime: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config's `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_order: usize,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3])]
    ks: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![3, 4, 5])]
    sigmas: Vec<u32>,
    #[arg(long)]
    min_girth: Option<usize>,
    #[arg(long)]
    colorable_only: bool,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_instance(graph_path: &Path, lists_path: &Path) -> Result<(Graph, ListAssignment), CliError> {
    let g = read_graph(&read_file(graph_path)?)?;
    let lists = read_lists(&read_file(lists_path)?, &g)?;
    Ok((g, lists))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = match a.family {
        FamilyName::CliqueUnion => graph::clique_union(a.n, a.delta)?,
        FamilyName::PowerCycle => graph::power_cycle(a.n, a.r)?,
        FamilyName::CompleteBipartite => graph::complete_bipartite(a.n, a.n),
        FamilyName::CompleteMultipartite => graph::complete_multipartite(&vec![a.n; a.parts])?,
        FamilyName::Cycle => graph::cycle(a.n)?,
        FamilyName::Path => graph::path(a.n),
        FamilyName::Complete => graph::complete(a.n),
        FamilyName::Petersen => graph::petersen(),
    };
    emit(out, a.output.as_deref(), &write_graph(&g))
}

fn sample(a: &SampleArgs, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&read_file(&a.graph)?)?;
    let lists = sample_assignment(&g, a.k, a.sigma, SeedSpec::new(seed, a.trial))?;
    emit(out, a.output.as_deref(), &write_lists(&lists))
}

fn solve_cmd(a: &InstanceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, lists) = load_instance(&a.graph, &a.lists)?;
    let res = solve(&g, &lists);
    let status = if res.is_colorable() { "COLORABLE" } else { "UNCOLORABLE" };
    writeln!(out, "{status}")?;
    if a.json {
        if let Some(phi) = &res.witness {
            writeln!(out, "{}", serde_json::to_string(phi).expect("coloring serializes"))?;
        }
    }
    Ok(())
}

fn failure_certificate(kind: CertKind, g: &Graph, lists: &ListAssignment) -> Result<Option<Certificate>, CliError> {
    Ok(match kind {
        CertKind::Critical => {
            let c = extract_critical(g, lists)?;
            Some(Certificate::Critical { vertices: c.vertices })
        }
        CertKind::BadTriple => find_bad_triple(g, lists)?.map(|b| Certificate::from_bad_triple(&b)),
        CertKind::TwoBadPair => match find_2bad_pair(g, lists)? {
            Some(pair) => {
                let w = is_2bad(g, &pair, lists)?.expect("found pairs are 2-bad");
                Some(Certificate::from_pair(&pair, &w))
            }
            None => None,
        },
        CertKind::TreeBad => find_tree_bad(g, lists)?.map(|t| Certificate::from_tree_bad(&t)),
        CertKind::Auto | CertKind::Coloring => None,
    })
}

fn certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, lists) = load_instance(&a.graph, &a.lists)?;
    let res = solve(&g, &lists);
    if let Some(phi) = res.witness {
        if matches!(a.kind, CertKind::Auto | CertKind::Coloring) {
            let colors = phi.as_slice().iter().map(|c| c.expect("total coloring")).collect();
            writeln!(out, "{}", Certificate::Coloring { colors }.to_json())?;
            return Ok(());
        }
        return Err(CliError::Domain("instance is colorable; no failure certificate exists".into()));
    }
    let kinds: Vec<CertKind> = match a.kind {
        CertKind::Coloring => {
            return Err(CliError::Domain("instance is not colorable".into()));
        }
        CertKind::Auto => {
            let mut ks = Vec::new();
            if g.girth().is_some_and(|girth| girth > 3) {
                ks.push(CertKind::TreeBad);
            }
            if lists.k() == 2 {
                ks.push(CertKind::TwoBadPair);
            }
            ks.extend([CertKind::BadTriple, CertKind::Critical]);
            ks
        }
        k => vec![k],
    };
    let mut last_err = None;
    for kind in kinds {
        match failure_certificate(kind, &g, &lists) {
            Ok(Some(c)) => {
                writeln!(out, "{}", c.to_json())?;
                return Ok(());
            }
            Ok(None) => {}
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| CliError::Domain("no certificate of the requested kind found".into())))
}

fn need(v: Option<u64>, name: &str) -> Result<u64, CliError> {
    v.ok_or_else(|| CliError::Domain(format!("--{name} is required for this bound")))
}

fn bound(a: &BoundArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n = || need(a.n, "n");
    let d = || need(a.delta, "delta");
    let k = || need(a.k, "k");
    let s = || need(a.sigma, "sigma");
    let report: BoundReport = match a.bound {
        BoundName::IdenticalCliques => moments::expected_identical_cliques_bound(n()?, d()?, k()?, s()?)?,
        BoundName::IdenticalCliquesExact => moments::expected_identical_cliques_exact(n()?, d()?, k()?, s()?)?,
        BoundName::AlternatingPaths => {
            let k = k()?;
            let r_min = a.r_min.unwrap_or(k * k + k + 1);
            let r_max = a.r_max.unwrap_or(n()?);
            moments::alternating_path_expectation(n()?, d()?, k, s()?, r_min, r_max)?
        }
        BoundName::BadTripleProbability => moments::bad_triple_probability_bound(need(a.m, "m")?, d()?, k()?, s()?)?,
        BoundName::ProperTripleCount => moments::proper_triple_count_bound(n()?, d()?, need(a.m, "m")?)?,
        BoundName::BadTripleSum => moments::bad_triple_expectation_sum(n()?, d()?, k()?, s()?, a.m_lo, a.m_hi)?,
        BoundName::Chebyshev => {
            let e = a
                .expectation
                .ok_or_else(|| CliError::Domain("--expectation is required".into()))?;
            moments::chebyshev_lower_bound(e, a.pi.unwrap_or(0.0))?
        }
        BoundName::PiCliqueUnion => moments::pi_bound_clique_union(n()?, d()?, k()?, s()?)?,
        BoundName::PairProbability => moments::pair_probability_bound(need(a.l, "l")?, a.r.unwrap_or(0), s()?)?,
        BoundName::PairCount => moments::pair_count_bound(n()?, d()?, need(a.l, "l")?, a.r.unwrap_or(0))?,
        BoundName::PairSum => moments::pair_expectation_sum(n()?, d()?, s()?, a.l_max.unwrap_or(n()?))?,
        BoundName::TreeBad => moments::tree_bad_expectation_bound(n()?, d()?, k()?, s()?, need(a.g, "g")?)?,
        BoundName::BlockedVertex => moments::blocked_vertex_expectation(n()?, d()?, k()?, s()?)?,
        BoundName::Regime => {
            let params = RegimeParams {
                girth: a.g,
                s: a.s,
                alpha: a.alpha,
                epsilon: a.epsilon,
                ..RegimeParams::new(n()?, d()?, k()?, s()?)
            };
            let reports = match &a.regime {
                Some(name) => vec![moments::evaluate_regime(name.parse::<Regime>()?, &params)?],
                None => moments::girth_regime_bounds(&params),
            };
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(&r).expect("report serializes"))?;
            }
            return Ok(());
        }
    };
    writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    Ok(())
}

fn sweep_cmd(a: &SweepArgs, seed: Option<u64>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = SweepConfig::from_json(&read_file(&a.config)?)?;
    if let Some(seed) = seed {
        cfg.base_seed = seed;
    }
    if a.workers.is_some() {
        cfg.workers = a.workers;
    }
    let result = harness::sweep(&cfg)?;
    if let Some(dir) = a.out.as_ref().or(cfg.output_dir.as_ref()) {
        harness::write_outputs(dir, &cfg, &result)?;
    }
    writeln!(out, "{}", harness::summary_json(&cfg, &result))?;
    Ok(())
}

fn verify(a: &VerifyArgs, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = CorpusSpec {
        max_order: a.max_order,
        min_girth: a.min_girth,
        ks: a.ks.clone(),
        sigmas: a.sigmas.clone(),
        trials_per_graph: a.trials,
        base_seed: seed,
        filter: if a.colorable_only {
            InstanceFilter::ColorableOnly
        } else {
            InstanceFilter::All
        },
    };
    let report = harness::verify_lemmas(&spec)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("{} counterexamples found", report.counterexamples.len())))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let seed = cli.seed.unwrap_or(0);
    let result = match &cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Sample(a) => sample(a, seed, out),
        Command::Solve(a) => solve_cmd(a, out),
        Command::Certify(a) => certify(a, out),
        Command::Bound(a) => bound(a, out),
        Command::Sweep(a) => sweep_cmd(a, cli.seed, out),
        Command::VerifyLemmas(a) => verify(a, seed, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

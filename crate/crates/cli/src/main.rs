use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nzflow::batch::{run_batch, BatchMode, BatchOptions};
use nzflow::certificate::{Certificate, CertificateStats, ExhaustedMatching, Payload};
use nzflow::coloring::{
    chi_n_exact, coloring_from_flow, h_coloring, is_h_coloring, is_normal, EdgeColoring,
};
use nzflow::flow::{
    claw_free_flow, even_cycle_flow, extract_disjoint_matchings, survey_matchings, two_odd_cycle_flow,
    FlowAssignment, FlowInstance, SearchLimits, SearchOptions, SearchStats, TwoCycleOutcome,
};
use nzflow::formats::{encode_graph6, encode_sparse6, export_dot, parse_line, DotStyle};
use nzflow::generators::{expand_vertices_to_5cycles, FamilySpec};
use nzflow::matching::{complement_two_factor, enumerate_perfect_matchings, matchings_through_edge};
use nzflow::{Error, PerfectMatching, Pseudograph};

const TIMEOUT_VAR: &str = "NZFLOW_TIMEOUT_SECS";
const DEFAULT_TIMEOUT_SECS: u64 = 300;

#[derive(Parser)]
#[command(name = "nzflow", version, about = "Non-conflicting Z2xZ2 flows and normal edge-colourings of cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph.
    Gen(GenArgs),
    /// Flow searches.
    #[command(subcommand)]
    Flow(FlowCommand),
    /// Exact normal chromatic index.
    ChiN {
        graph: String,
        #[arg(long, default_value_t = 7)]
        max: u32,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Normal colouring checks.
    #[command(subcommand)]
    Normal(NormalCommand),
    /// Search for an H-colouring of G.
    Hcolor { g: String, h: String },
    /// Two edge-disjoint perfect matchings of a 5-regular graph via its
    /// 5-cycle expansion.
    Thomassen {
        graph: String,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run a search over every line of a graph6/sparse6 corpus.
    Batch(BatchArgs),
}

#[derive(Args)]
struct GenArgs {
    family: String,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma separated permutation for `permutation`.
    #[arg(long)]
    perm: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// graph6 for simple graphs, sparse6 otherwise.
    Auto,
    Graph6,
    Sparse6,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum FlowCommand {
    /// Look for a non-conflicting flow.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    graph: String,
    /// `all`, a matching index in enumeration order, or `edge=ID`.
    #[arg(long, default_value = "all")]
    matching: String,
    #[arg(long, value_enum)]
    construct: Option<Construct>,
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Write a DOT drawing of the result.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construct {
    Clawfree,
    Twocycle,
    Even,
}

#[derive(Subcommand)]
enum NormalCommand {
    /// Check that a colouring (JSON) is proper and normal.
    Verify { graph: String, coloring: PathBuf },
}

#[derive(Args)]
struct BatchArgs {
    corpus: PathBuf,
    #[arg(long, value_parser = parse_mode)]
    mode: BatchMode,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Largest palette for `chi-n` mode.
    #[arg(long, default_value_t = 7)]
    max: u32,
    /// Record per-graph wall times (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

fn parse_mode(s: &str) -> Result<BatchMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of a subcommand that ran to completion.
enum Verdict {
    Found,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Found) => ExitCode::from(0),
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_resource));
            ExitCode::from(if resource { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let timeout = timeout()?;
    let limits = SearchLimits::with_timeout(timeout);
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Flow(FlowCommand::Search(args)) => flow_search(args, limits),
        Command::ChiN { graph, max, certificate } => chi_n(&graph, max, certificate, limits),
        Command::Normal(NormalCommand::Verify { graph, coloring }) => normal_verify(&graph, &coloring),
        Command::Hcolor { g, h } => hcolor(&g, &h, limits),
        Command::Thomassen { graph, certificate } => thomassen(&graph, certificate, limits),
        Command::Batch(args) => batch(args, timeout),
    }
}

fn timeout() -> anyhow::Result<Duration> {
    let secs = match std::env::var(TIMEOUT_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Input(format!("{TIMEOUT_VAR} must be a whole number of seconds, got {v:?}")))?,
        Err(_) => DEFAULT_TIMEOUT_SECS,
    };
    Ok(Duration::from_secs(secs))
}

/// A graph argument: `-` for stdin, a file, `family[:key=value:...]`, or an
/// inline graph6/sparse6 string.
fn load_graph(arg: &str) -> anyhow::Result<Pseudograph> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return graph_from_text(&text).context("graph on stdin");
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return graph_from_text(&text).with_context(|| format!("graph in {arg}"));
    }
    let mut parts = arg.split(':');
    let name = parts.next().unwrap_or_default();
    let params: Vec<(String, String)> = parts
        .filter_map(|p| p.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect();
    match FamilySpec::from_name(name, &params) {
        Ok(spec) => Ok(spec.build()?),
        Err(family_err) => parse_line(arg).map_err(|_| anyhow!(family_err).context(format!("{arg:?} is not a file, family or graph6/sparse6 string"))),
    }
}

/// First graph in a text: JSON (a graph or a family spec) or the first
/// non-blank, non-comment graph6/sparse6 line.
fn graph_from_text(text: &str) -> anyhow::Result<Pseudograph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        if let Ok(g) = serde_json::from_str::<Pseudograph>(trimmed) {
            return Ok(g);
        }
        let spec: FamilySpec = serde_json::from_str(trimmed).map_err(|e| Error::Input(format!("JSON graph: {e}")))?;
        return Ok(spec.build()?);
    }
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Input("no graph found".into()))?;
    Ok(parse_line(line)?)
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Input(format!("writing {}: {e}", path.display())))?;
    Ok(())
}

fn gen(args: GenArgs) -> anyhow::Result<Verdict> {
    let mut params = Vec::new();
    for (key, value) in [("l", args.l), ("n", args.n), ("k", args.k)] {
        if let Some(v) = value {
            params.push((key.to_string(), v.to_string()));
        }
    }
    if let Some(seed) = args.seed {
        params.push(("seed".into(), seed.to_string()));
    }
    if let Some(perm) = args.perm {
        params.push(("perm".into(), perm));
    }
    let spec = FamilySpec::from_name(&args.family, &params)?;
    let g = spec.build()?;
    let text = match args.format {
        Format::Auto => encode_graph6(&g).unwrap_or_else(|_| encode_sparse6(&g)),
        Format::Graph6 => encode_graph6(&g)?,
        Format::Sparse6 => encode_sparse6(&g),
        Format::Json => serde_json::to_string(&g)?,
        Format::Dot => export_dot(&g, &DotStyle::default()),
    };
    println!("{}", text.trim_end());
    Ok(Verdict::Found)
}

fn stats_since(start: Instant, nodes: u64) -> CertificateStats {
    CertificateStats {
        nodes,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Which matchings `--matching` selects.
enum Selection {
    All,
    Index(usize),
    Edge(usize),
}

fn parse_selection(s: &str) -> anyhow::Result<Selection> {
    if s == "all" {
        return Ok(Selection::All);
    }
    if let Some(id) = s.strip_prefix("edge=") {
        return Ok(Selection::Edge(id.parse().map_err(|_| Error::Input(format!("bad edge id {id:?}")))?));
    }
    Ok(Selection::Index(s.parse().map_err(|_| {
        Error::Input(format!("--matching takes all, an index or edge=ID, got {s:?}"))
    })?))
}

fn selected_matchings(g: &Pseudograph, sel: &Selection) -> anyhow::Result<Vec<PerfectMatching>> {
    Ok(match *sel {
        Selection::All => enumerate_perfect_matchings(g).collect(),
        Selection::Index(i) => vec![enumerate_perfect_matchings(g)
            .nth(i)
            .ok_or_else(|| Error::Input(format!("the graph has no perfect matching with index {i}")))?],
        Selection::Edge(e) => {
            if e >= g.edge_count() {
                bail!(Error::Input(format!("edge {e} does not exist")));
            }
            matchings_through_edge(g, e).collect()
        }
    })
}

struct Found {
    matching: PerfectMatching,
    flow: FlowAssignment,
    note: String,
    provenance: Option<nzflow::flow::CaseRecord>,
}

fn report_found(g: &Pseudograph, found: &Found, args: &SearchArgs, stats: CertificateStats) -> anyhow::Result<()> {
    let inst = FlowInstance::new(g, &found.matching)?;
    println!("non-conflicting flow found ({})", found.note);
    println!("matching: {:?}", found.matching.edge_ids());
    let values: Vec<String> = found.flow.values().iter().map(|v| v.to_string()).collect();
    println!("flow: [{}]", values.join(", "));
    if let Ok(c) = coloring_from_flow(g, &inst.two_factor, &found.flow) {
        println!("normal colouring with {} colours: {:?}", c.coloring.used_colors(), c.coloring.colors);
    }
    if let Some(path) = &args.certificate {
        let cert = Certificate::flow_found(g, &found.matching, &found.flow, found.provenance.clone(), stats);
        write_file(path, &cert.to_json())?;
    }
    if let Some(path) = &args.dot {
        let style = DotStyle {
            flow: Some((&found.matching, &found.flow)),
            ..Default::default()
        };
        write_file(path, &export_dot(g, &style))?;
    }
    Ok(())
}

fn flow_search(args: SearchArgs, limits: SearchLimits) -> anyhow::Result<Verdict> {
    let start = Instant::now();
    let g = load_graph(&args.graph)?;
    if !nzflow::graph::is_cubic(&g) || g.has_loops() {
        bail!(Error::Input("flow search needs a loopless cubic graph".into()));
    }
    let sel = parse_selection(&args.matching)?;
    let opts = SearchOptions {
        limits,
        ..Default::default()
    };
    let found = match args.construct {
        None => {
            let matchings = selected_matchings(&g, &sel)?;
            let survey = if matches!(sel, Selection::All) {
                survey_matchings(&g, opts)?
            } else {
                let mut verdicts = Vec::new();
                for f in &matchings {
                    let (flow, stats) = FlowInstance::new(&g, f)?.find_nonconflicting(limits)?;
                    let hit = flow.is_some();
                    verdicts.push(nzflow::flow::MatchingVerdict {
                        matching: f.edge_ids().to_vec(),
                        flow,
                        stats,
                    });
                    if hit {
                        break;
                    }
                }
                nzflow::flow::MatchingSurvey { verdicts }
            };
            let nodes = survey.total_stats().nodes;
            let with_flow = survey.verdicts.iter().filter(|v| v.flow.is_some()).count();
            println!(
                "matchings searched: {}, with a non-conflicting flow: {with_flow}, nodes: {nodes}",
                survey.verdicts.len()
            );
            match survey.verdicts.iter().find(|v| v.flow.is_some()) {
                Some(v) => Some(Found {
                    matching: PerfectMatching::new(&g, v.matching.clone())?,
                    flow: v.flow.clone().expect("checked"),
                    note: "exhaustive search".into(),
                    provenance: None,
                }),
                None => {
                    if let (Selection::All, Some(path)) = (&sel, &args.certificate) {
                        let rows = survey
                            .verdicts
                            .iter()
                            .map(|v| ExhaustedMatching {
                                matching: v.matching.clone(),
                                stats: v.stats,
                            })
                            .collect();
                        let cert = Certificate::new(
                            &g,
                            Payload::NoFlowForAnyMatching { matchings: rows },
                            stats_since(start, nodes),
                        );
                        write_file(path, &cert.to_json())?;
                    }
                    None
                }
            }
        }
        Some(Construct::Even) => {
            let matchings = selected_matchings(&g, &sel)?;
            matchings.into_iter().find_map(|f| {
                let tf = complement_two_factor(&g, &f).ok()?;
                let flow = even_cycle_flow(&tf).ok()?;
                Some(Found {
                    matching: f,
                    flow,
                    note: "all cycles of the 2-factor are even".into(),
                    provenance: None,
                })
            })
        }
        Some(Construct::Clawfree) => {
            let e = match sel {
                Selection::Edge(e) => e,
                _ => 0,
            };
            claw_free_flow(&g, e, limits)?.map(|w| Found {
                note: format!(
                    "matching through edge {e} meeting every 3-edge-cut once, {} conflicts before loop reset",
                    w.conflicts_before
                ),
                matching: w.matching,
                flow: w.flow,
                provenance: None,
            })
        }
        Some(Construct::Twocycle) => {
            let matchings = selected_matchings(&g, &sel)?;
            let Some(f) = matchings
                .into_iter()
                .find(|f| complement_two_factor(&g, f).is_ok_and(|tf| tf.cycles().len() <= 2))
            else {
                bail!(Error::Precondition("no selected matching leaves a 2-factor with at most two cycles".into()));
            };
            let tf = complement_two_factor(&g, &f)?;
            match two_odd_cycle_flow(&g, &tf)? {
                TwoCycleOutcome::Petersen => {
                    println!("the graph is the Petersen graph, which has no non-conflicting flow");
                    None
                }
                TwoCycleOutcome::Flow(w) => Some(Found {
                    note: format!("construction branch {:?}", w.provenance.cases()),
                    matching: w.matching.clone(),
                    flow: w.flow.clone(),
                    provenance: Some(w.provenance.clone()),
                }),
            }
        }
    };
    match found {
        Some(found) => {
            report_found(&g, &found, &args, stats_since(start, 0))?;
            Ok(Verdict::Found)
        }
        None => {
            println!("no non-conflicting flow");
            Ok(Verdict::Negative)
        }
    }
}

fn chi_n(graph: &str, max: u32, certificate: Option<PathBuf>, limits: SearchLimits) -> anyhow::Result<Verdict> {
    let start = Instant::now();
    let g = load_graph(graph)?;
    match chi_n_exact(&g, max, limits)? {
        Some(c) => {
            println!("chi_N = {}", c.k);
            if c.multigraph {
                println!("note: the graph has parallel edges");
            }
            println!("witness: {:?}", c.witness.colors);
            let exhausted = &c.attempts[..c.attempts.len() - 1];
            for (k, s) in exhausted {
                println!("no normal {k}-colouring ({} nodes)", s.nodes);
            }
            if let Some(path) = certificate {
                let nodes = c.attempts.iter().map(|(_, s)| s.nodes).sum();
                let payload = Payload::ChiNValue {
                    k: c.k,
                    witness: c.witness.clone(),
                    exhausted: exhausted.to_vec(),
                };
                write_file(&path, &Certificate::new(&g, payload, stats_since(start, nodes)).to_json())?;
            }
            Ok(Verdict::Found)
        }
        None => {
            println!("no normal k-colouring for k <= {max}");
            Ok(Verdict::Negative)
        }
    }
}

fn normal_verify(graph: &str, coloring: &Path) -> anyhow::Result<Verdict> {
    let g = load_graph(graph)?;
    let text = std::fs::read_to_string(coloring)
        .map_err(|e| Error::Input(format!("reading {}: {e}", coloring.display())))?;
    let c = match serde_json::from_str::<EdgeColoring>(&text) {
        Ok(c) => EdgeColoring::new(c.k, c.colors)?,
        Err(_) => {
            let colors: Vec<u32> = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("colouring JSON: {e}")))?;
            let k = colors.iter().copied().max().unwrap_or(0);
            EdgeColoring::new(k, colors)?
        }
    };
    let report = is_normal(&g, &c)?;
    if report.normal {
        println!("normal colouring with {} colours", c.used_colors());
        Ok(Verdict::Found)
    } else {
        println!("abnormal edges: {:?}", report.abnormal);
        Ok(Verdict::Negative)
    }
}

fn hcolor(g: &str, h: &str, limits: SearchLimits) -> anyhow::Result<Verdict> {
    let (g, h) = (load_graph(g)?, load_graph(h)?);
    let (phi, stats): (_, SearchStats) = h_coloring(&g, &h, limits)?;
    match phi {
        Some(phi) => {
            debug_assert!(is_h_coloring(&g, &h, &phi));
            println!("{}", serde_json::to_string(&phi)?);
            Ok(Verdict::Found)
        }
        None => {
            println!("no H-colouring ({} nodes)", stats.nodes);
            Ok(Verdict::Negative)
        }
    }
}

fn thomassen(graph: &str, certificate: Option<PathBuf>, limits: SearchLimits) -> anyhow::Result<Verdict> {
    let start = Instant::now();
    let h5 = load_graph(graph)?;
    let (g, tf) = expand_vertices_to_5cycles(&h5)?;
    let inst = FlowInstance::from_two_factor(&g, tf.clone())?;
    let (flow, stats) = inst.find_nonconflicting(limits)?;
    let Some(flow) = flow else {
        println!("no non-conflicting flow for the 5-cycle 2-factor ({} nodes)", stats.nodes);
        return Ok(Verdict::Negative);
    };
    let (a, b) = extract_disjoint_matchings(&h5, &g, &tf, &flow)?;
    println!("first: {:?}", a.edge_ids());
    println!("second: {:?}", b.edge_ids());
    if let Some(path) = certificate {
        let payload = Payload::DisjointMatchings {
            first: a.edge_ids().to_vec(),
            second: b.edge_ids().to_vec(),
        };
        write_file(&path, &Certificate::new(&h5, payload, stats_since(start, stats.nodes)).to_json())?;
    }
    Ok(Verdict::Found)
}

fn batch(args: BatchArgs, timeout: Duration) -> anyhow::Result<Verdict> {
    let corpus = std::fs::read_to_string(&args.corpus)
        .map_err(|e| Error::Input(format!("reading {}: {e}", args.corpus.display())))?;
    let opts = BatchOptions {
        mode: args.mode,
        jobs: args.jobs.max(1),
        timeout: Some(timeout),
        chi_n_max: args.max,
        timings: args.timings,
    };
    let report = run_batch(&corpus, &opts);
    println!("{}", serde_json::to_string_pretty(&report.summary)?);
    if let Some(path) = args.report {
        write_file(&path, &report.to_json())?;
    }
    Ok(Verdict::Found)
}

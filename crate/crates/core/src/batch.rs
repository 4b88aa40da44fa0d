//! Corpus runner: one row per graph6/sparse6 line, fanned out over a pool.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::chi_n_exact;
use crate::error::{Error, Result};
use crate::flow::{find_any_nonconflicting, survey_matchings, SearchLimits, SearchOptions};
use crate::formats::parse_line;
use crate::graph::{bridges, is_claw_free, is_cubic, Pseudograph};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchMode {
    /// Does some perfect matching admit a non-conflicting flow?
    Nonconflicting,
    ChiN,
    /// Does every perfect matching admit one?
    EveryTwoFactor,
}

impl std::str::FromStr for BatchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonconflicting" => Ok(BatchMode::Nonconflicting),
            "chi-n" => Ok(BatchMode::ChiN),
            "every-2-factor" => Ok(BatchMode::EveryTwoFactor),
            other => Err(Error::input(format!("unknown batch mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub mode: BatchMode,
    pub jobs: usize,
    /// Per-graph wall-clock guard.
    pub timeout: Option<Duration>,
    /// Largest palette tried in `chi-n` mode.
    pub chi_n_max: u32,
    /// Include wall times in rows. Off by default so reports are
    /// byte-identical across runs.
    pub timings: bool,
}

impl BatchOptions {
    pub fn new(mode: BatchMode) -> Self {
        BatchOptions {
            mode,
            jobs: 1,
            timeout: None,
            chi_n_max: 7,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    ChiN { k: u32 },
    AboveMax { max: u32 },
    NotApplicable { reason: String },
    Timeout,
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    /// 1-based line number in the corpus.
    pub id: usize,
    pub order: Option<usize>,
    pub bridgeless: Option<bool>,
    pub claw_free: Option<bool>,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Matchings tried and how many admit a non-conflicting flow.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matchings: Option<(usize, usize)>,
    pub nodes: u64,
    /// Bridgeless, yet no matching admits a non-conflicting flow.
    pub finding: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub yes: usize,
    pub no: usize,
    pub chi_n: Vec<(u32, usize)>,
    pub not_applicable: usize,
    pub timeouts: usize,
    pub errors: usize,
    pub findings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub mode: BatchMode,
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

impl BatchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn run_one(id: usize, line: &str, opts: &BatchOptions) -> BatchRow {
    let start = Instant::now();
    let mut row = BatchRow {
        id,
        order: None,
        bridgeless: None,
        claw_free: None,
        verdict: Verdict::Yes,
        matchings: None,
        nodes: 0,
        finding: false,
        wall_ms: None,
    };
    let g = match parse_line(line) {
        Ok(g) => g,
        Err(e) => {
            row.verdict = Verdict::Error { message: e.to_string() };
            return row;
        }
    };
    row.order = Some(g.vertex_count());
    let cubic = is_cubic(&g) && !g.has_loops();
    let bridgeless = bridges(&g).is_empty();
    row.bridgeless = Some(bridgeless);
    row.claw_free = Some(cubic && is_claw_free(&g));
    let limits = match opts.timeout {
        Some(t) => SearchLimits::with_timeout(t),
        None => SearchLimits::unlimited(),
    };
    row.verdict = if !cubic {
        Verdict::NotApplicable {
            reason: "not a loopless cubic graph".into(),
        }
    } else {
        match evaluate(&g, bridgeless, opts, limits, &mut row) {
            Ok(v) => v,
            Err(e) if e.is_resource() => Verdict::Timeout,
            Err(e) => Verdict::Error { message: e.to_string() },
        }
    };
    row.finding = bridgeless && row.verdict == Verdict::No && opts.mode != BatchMode::ChiN;
    if opts.timings {
        row.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    row
}

fn evaluate(g: &Pseudograph, bridgeless: bool, opts: &BatchOptions, limits: SearchLimits, row: &mut BatchRow) -> Result<Verdict> {
    let search = SearchOptions {
        limits,
        parallel: false,
    };
    match opts.mode {
        BatchMode::Nonconflicting => {
            let found = find_any_nonconflicting(g, search)?;
            Ok(if found.is_some() { Verdict::Yes } else { Verdict::No })
        }
        BatchMode::EveryTwoFactor => {
            let survey = survey_matchings(g, search)?;
            let with_flow = survey.verdicts.iter().filter(|v| v.flow.is_some()).count();
            row.matchings = Some((survey.verdicts.len(), with_flow));
            row.nodes = survey.total_stats().nodes;
            Ok(if survey.every() { Verdict::Yes } else { Verdict::No })
        }
        BatchMode::ChiN => {
            if !bridgeless {
                return Ok(Verdict::NotApplicable {
                    reason: "graph has a bridge".into(),
                });
            }
            match chi_n_exact(g, opts.chi_n_max, limits)? {
                Some(c) => {
                    row.nodes = c.attempts.iter().map(|(_, s)| s.nodes).sum();
                    Ok(Verdict::ChiN { k: c.k })
                }
                None => Ok(Verdict::AboveMax { max: opts.chi_n_max }),
            }
        }
    }
}

/// Runs every non-blank, non-`#` line of `corpus`. Rows come back in input
/// order whatever the job count.
pub fn run_batch(corpus: &str, opts: &BatchOptions) -> BatchReport {
    let inputs: Vec<(usize, &str)> = corpus
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l))
        .collect();
    let rows = par::with_threads(opts.jobs, || {
        par::map(&inputs, opts.jobs > 1, |&(id, line)| run_one(id, line, opts))
    });
    let mut summary = BatchSummary {
        total: rows.len(),
        ..Default::default()
    };
    for row in &rows {
        match &row.verdict {
            Verdict::Yes => summary.yes += 1,
            Verdict::No => summary.no += 1,
            Verdict::ChiN { k } => match summary.chi_n.iter_mut().find(|(x, _)| x == k) {
                Some(entry) => entry.1 += 1,
                None => summary.chi_n.push((*k, 1)),
            },
            Verdict::AboveMax { .. } | Verdict::NotApplicable { .. } => summary.not_applicable += 1,
            Verdict::Timeout => summary.timeouts += 1,
            Verdict::Error { .. } => summary.errors += 1,
        }
        summary.findings += row.finding as usize;
    }
    summary.chi_n.sort_unstable();
    BatchReport {
        mode: opts.mode,
        rows,
        summary,
    }
}

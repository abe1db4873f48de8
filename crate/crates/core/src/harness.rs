//! Experiment sweeps, exponent fitting and report documents.
//!
//! Every sweep row is re-verified pattern-free and edge-maximal by the
//! oracle before it is emitted. Edge counts are heuristic lower bounds on
//! `ex(n, H)`, never estimates of it.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::finder::{Attempt, FindReport, FindStatus};
use crate::goodness::GoodnessTables;
use crate::graph::Graph;
use crate::oracle::{self, EdgeProbe};
use crate::pattern::PatternDescriptor;
use crate::regularize::RegularizeReport;
use crate::VERSION;

/// `start:stop:step`, inclusive of `stop` when the step lands on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl NRange {
    pub fn new(start: usize, stop: usize, step: usize) -> Result<Self> {
        if step == 0 {
            return Err(invalid("n-range step must be >= 1"));
        }
        if start > stop {
            return Err(invalid(format!("empty n-range {start}:{stop}")));
        }
        Ok(NRange { start, stop, step })
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

impl FromStr for NRange {
    type Err = Error;

    /// `A:B` or `A:B:S`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("n-range {s:?}: bad number {x:?}")))
        };
        match parts.as_slice() {
            [a, b] => NRange::new(num(a)?, num(b)?, 1),
            [a, b, c] => NRange::new(num(a)?, num(b)?, num(c)?),
            _ => Err(invalid(format!("n-range {s:?}: expected A:B or A:B:S"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Best of several random greedy passes.
    HillClimb,
    /// Random graph at the theoretical density, cleaned and completed.
    RandomThreshold,
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hillclimb" => Ok(SweepMode::HillClimb),
            "random-threshold" => Ok(SweepMode::RandomThreshold),
            _ => Err(invalid(format!("unknown sweep mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub pattern: PatternDescriptor,
    pub n_range: NRange,
    /// Seeds `0..seeds` are run for every `n`.
    pub seeds: u64,
    pub mode: SweepMode,
    /// Passes per cell.
    pub iters: usize,
    /// Record wall times. Off by default so output is reproducible.
    pub timing: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.pattern.validate()?;
        NRange::new(self.n_range.start, self.n_range.stop, self.n_range.step)?;
        if self.seeds == 0 {
            return Err(invalid("seeds must be >= 1"));
        }
        if self.iters == 0 {
            return Err(invalid("iters must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub seed: u64,
    pub edges: usize,
    /// `ln edges / ln n`.
    pub local_exponent: Option<f64>,
    pub verified: bool,
    pub wall_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    /// Least-squares slope of `ln edges` against `ln n`.
    pub slope: Option<f64>,
    pub theory: Option<f64>,
    /// The `n` values the slope was fitted on.
    pub fitted_on: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Edge target of the random-threshold mode: `n^theory`, or `n^1.5` for
/// patterns without a known exponent.
fn threshold_edges(n: usize, theory: Option<f64>) -> usize {
    (n as f64).powf(theory.unwrap_or(1.5)).round() as usize
}

fn cell_seed(n: usize, seed: u64) -> u64 {
    ((n as u64) << 32) ^ seed
}

fn run_cell(cfg: &SweepConfig, probe: &EdgeProbe, n: usize, seed: u64) -> Result<SweepRow> {
    let t = Instant::now();
    let s = cell_seed(n, seed);
    let g = match cfg.mode {
        SweepMode::HillClimb => oracle::hill_climb_free(n, &cfg.pattern, cfg.iters, s)?,
        SweepMode::RandomThreshold => {
            let m = threshold_edges(n, cfg.pattern.theoretical_exponent());
            oracle::random_threshold_free(n, m, &cfg.pattern, cfg.iters, s)?
        }
    };
    let free = g.edges().all(|(u, v)| !probe.through(&g, u, v));
    let maximal = free && oracle::is_edge_maximal(&g, &cfg.pattern)?;
    if !maximal {
        return Err(Error::Precondition(format!(
            "row n={n} seed={seed} failed verification (free={free})"
        )));
    }
    let edges = g.m();
    Ok(SweepRow {
        n,
        seed,
        edges,
        local_exponent: (n > 1 && edges > 0).then(|| (edges as f64).ln() / (n as f64).ln()),
        verified: true,
        wall_ms: cfg.timing.then(|| t.elapsed().as_millis()),
    })
}

/// Least-squares slope through `(x, y)`; `None` below two distinct `x`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (points.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

/// Fits the best edge count per `n` over the largest half of the `n` values.
pub fn fit_summary(rows: &[SweepRow], theory: Option<f64>) -> SweepSummary {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let fitted_on: Vec<usize> = ns[ns.len() / 2..].to_vec();
    let points: Vec<(f64, f64)> = fitted_on
        .iter()
        .filter_map(|&n| {
            let best = rows.iter().filter(|r| r.n == n).map(|r| r.edges).max()?;
            (best > 0).then(|| ((n as f64).ln(), (best as f64).ln()))
        })
        .collect();
    SweepSummary {
        slope: least_squares_slope(&points),
        theory,
        fitted_on,
    }
}

/// Runs every `(n, seed)` cell in parallel; rows come back in `(n, seed)`
/// order. Any row failing verification aborts the sweep.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let probe = EdgeProbe::new(&cfg.pattern)?;
    let cells: Vec<(usize, u64)> = cfg
        .n_range
        .values()
        .into_iter()
        .flat_map(|n| (0..cfg.seeds).map(move |s| (n, s)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, s)| run_cell(cfg, &probe, n, s))
        .collect::<Result<Vec<_>>>()?;
    let summary = fit_summary(&rows, cfg.pattern.theoretical_exponent());
    Ok(SweepOutput { rows, summary })
}

fn opt_f64(x: Option<f64>) -> String {
    x.map_or("NA".into(), |v| format!("{v:.4}"))
}

/// CSV `n,seed,edges,verified,wall_ms` plus trailing `#` summary lines.
pub fn sweep_csv(cfg: &SweepConfig, out: &SweepOutput) -> String {
    let mut s = String::new();
    writeln!(s, "# kstk {VERSION} sweep: heuristic lower bounds on ex(n, {})", cfg.pattern).unwrap();
    writeln!(s, "n,seed,edges,verified,wall_ms").unwrap();
    for r in &out.rows {
        let wall = r.wall_ms.map_or("NA".into(), |w| w.to_string());
        writeln!(s, "{},{},{},{},{}", r.n, r.seed, r.edges, r.verified, wall).unwrap();
    }
    let fitted: Vec<String> = out.summary.fitted_on.iter().map(|n| n.to_string()).collect();
    writeln!(s, "# slope={} (heuristic lower bound, fitted on n={})", opt_f64(out.summary.slope), fitted.join(",")).unwrap();
    writeln!(s, "# theory={}", opt_f64(out.summary.theory)).unwrap();
    s
}

/// Per-level totals of one classification level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRow {
    pub level: String,
    pub objects: u64,
    pub admissible: u64,
    pub good: u64,
    /// Admissible-but-not-good objects over `n * delta^length`; `null` when
    /// the minimum degree is zero.
    pub not_good_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyParams {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub threshold: String,
    pub lv: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub params: ClassifyParams,
    pub paths: Vec<LevelRow>,
    pub spiders: Vec<LevelRow>,
}

fn ratio(g: &Graph, not_good: u64, len: usize) -> Option<f64> {
    let delta = g.min_degree();
    (delta > 0).then(|| not_good as f64 / (g.n() as f64 * (delta as f64).powi(len as i32)))
}

/// Report over a classified host; spider levels are listed in classification
/// order (total length, then lexicographic).
pub fn classify_report(g: &Graph, tables: &GoodnessTables, params: ClassifyParams) -> ClassifyReport {
    let paths = (1..=tables.k())
        .map(|len| {
            let st = tables.path_stats(len).expect("classified");
            LevelRow {
                level: len.to_string(),
                objects: st.objects,
                admissible: st.admissible,
                good: st.good,
                not_good_ratio: ratio(g, st.admissible_not_good(), len),
            }
        })
        .collect();
    let mut levels: Vec<&Vec<usize>> = tables.spider_levels().collect();
    levels.sort_by_key(|w| (w.iter().sum::<usize>(), (*w).clone()));
    let spiders = levels
        .into_iter()
        .map(|w| {
            let st = tables.spider_stats(w).expect("classified");
            let join: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            LevelRow {
                level: join.join(","),
                objects: st.objects,
                admissible: st.admissible,
                good: st.good,
                not_good_ratio: ratio(g, st.admissible_not_good(), w.iter().sum()),
            }
        })
        .collect();
    ClassifyReport {
        tool: "kstk",
        version: VERSION,
        params,
        paths,
        spiders,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FindParams {
    pub graph: String,
    pub pattern: String,
    #[serde(rename = "L")]
    pub l: f64,
    pub threshold: String,
    pub max_starts: usize,
    pub constructive_only: bool,
}

#[derive(Serialize)]
struct FindDoc<'a> {
    tool: &'static str,
    version: &'static str,
    params: &'a FindParams,
    status: &'a FindStatus,
    route: Option<crate::witness::Route>,
    attempts: &'a [Attempt],
    verified: Option<bool>,
}

/// Full record of a `find` run: parameters, attempts and outcome. The witness
/// itself goes in its own document ([`crate::Witness::to_json`]).
pub fn find_report_json(g: &Graph, report: &FindReport, params: &FindParams) -> String {
    let doc = FindDoc {
        tool: "kstk",
        version: VERSION,
        params,
        status: &report.status,
        route: report.witness.as_ref().map(|w| w.route),
        attempts: &report.attempts,
        verified: report.witness.as_ref().map(|w| oracle::verify_embedding(g, w)),
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

/// `key=value` lines: `m`, `e`, achieved `K` and density exponent.
pub fn regularize_text(graph: &str, epsilon: f64, c: f64, r: &RegularizeReport) -> String {
    let mut s = String::new();
    writeln!(s, "tool=kstk").unwrap();
    writeln!(s, "version={VERSION}").unwrap();
    writeln!(s, "graph={graph}").unwrap();
    writeln!(s, "epsilon={epsilon}").unwrap();
    writeln!(s, "c={c}").unwrap();
    writeln!(s, "m={}", r.m()).unwrap();
    writeln!(s, "e={}", r.edges()).unwrap();
    writeln!(s, "achieved_K={:.6}", r.achieved_k).unwrap();
    writeln!(s, "theoretical_K={:e}", r.theoretical_k).unwrap();
    writeln!(s, "exponent={}", opt_f64(r.density_exponent())).unwrap();
    s
}

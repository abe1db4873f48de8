use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use kstk::finder::{blowup_targets, find_blowup, FindOptions, FindStatus};
use kstk::goodness::GoodnessTables;
use kstk::harness::{self, ClassifyParams, FindParams, NRange, SweepConfig, SweepMode};
use kstk::oracle::{self, Containment, SearchBudget};
use kstk::regularize::{extract_almost_regular, RegularizeParams};
use kstk::spiders::{count_by_leaf, count_spiders, enumerate_spiders};
use kstk::threshold::parse_thresholds;
use kstk::{generators, pattern, Graph, PatternDescriptor, Witness};

#[derive(Parser)]
#[command(name = "kstk", version, about = "Spiders, goodness and oracles for subdivided K_{s,t}")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Only print errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Extract a dense almost-regular subgraph.
    Regularize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Also write the subgraph as an edge list.
        #[arg(long)]
        subgraph: Option<PathBuf>,
    },
    /// Spider enumeration.
    Spiders {
        #[command(subcommand)]
        cmd: SpiderCmd,
    },
    /// Classify paths and spiders as admissible/good.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "L", default_value_t = 2.0)]
        l: f64,
        #[arg(long, default_value = "paper")]
        threshold: String,
        #[arg(long, value_delimiter = ',')]
        lv: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find K_{s,t}^k or t*S, constructively first.
    Find {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PatternDescriptor,
        #[arg(long = "L", default_value_t = 2.0)]
        l: f64,
        #[arg(long, default_value = "paper")]
        threshold: String,
        /// Witness document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run record with parameters and attempts.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = kstk::finder::DEFAULT_MAX_STARTS)]
        max_starts: usize,
        #[arg(long)]
        constructive_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Brute-force ground truth.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Heuristic lower bounds over a range of n.
    Sweep {
        #[arg(long)]
        pattern: PatternDescriptor,
        #[arg(long)]
        n_range: NRange,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long, default_value = "hillclimb")]
        mode: SweepMode,
        /// Fill the wall_ms column (otherwise NA).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a graph as an edge list.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a witness document against a host.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpiderCmd {
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        lv: Vec<usize>,
        /// Per-leaf-vector CSV instead of the total.
        #[arg(long)]
        by_leaf: bool,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> kstk::Result<SearchBudget> {
        if self.time_limit.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            return Err(kstk::Error::InvalidParameter("time limit must be positive".into()));
        }
        SearchBudget::new(self.node_limit, self.time_limit.map(Duration::from_secs_f64))
    }
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exit 0 present, 1 absent, 3 budget exhausted.
    Contains {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PatternDescriptor,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: PatternDescriptor,
        /// Edge list of the extremal witness.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Hillclimb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: PatternDescriptor,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform G(n, m).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    Petersen,
    /// The concrete graph of a pattern descriptor.
    Pattern {
        #[arg(long)]
        pattern: PatternDescriptor,
    },
    /// `F^k` of an edge-list graph.
    Subdivide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

/// Input problems exit with 2, everything else is the command's own code.
enum Fail {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Input(e.to_string())
    }
}

type Run = Result<ExitCode, Fail>;

fn load(path: &Path) -> Result<Graph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn regularize(graph: &Path, epsilon: f64, c: f64, subgraph: Option<&Path>) -> Run {
    let g = load(graph)?;
    let params = RegularizeParams::new(epsilon, c)?;
    let r = extract_almost_regular(&g, &params)?;
    if let Some(p) = subgraph {
        emit(Some(p), &r.subgraph.to_edge_list())?;
    }
    emit(None, &harness::regularize_text(&graph.display().to_string(), epsilon, c, &r))?;
    Ok(ExitCode::SUCCESS)
}

fn spiders_count(graph: &Path, lv: &[usize], by_leaf: bool) -> Run {
    let g = load(graph)?;
    if lv.is_empty() || lv.contains(&0) {
        return Err(Fail::Input("--lv entries must be >= 1".into()));
    }
    if by_leaf {
        let header: Vec<String> = (1..=lv.len()).map(|i| format!("leaf_{i}")).collect();
        let mut s = format!("{},count\n", header.join(","));
        for (leaf, c) in count_by_leaf(enumerate_spiders(&g, lv)) {
            let xs: Vec<String> = leaf.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("{},{c}\n", xs.join(",")));
        }
        emit(None, &s)?;
    } else {
        let join: Vec<String> = lv.iter().map(|x| x.to_string()).collect();
        println!("lv={} count={}", join.join(","), count_spiders(&g, lv));
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(graph: &Path, k: usize, l: f64, threshold: &str, lv: Option<Vec<usize>>, out: Option<&Path>) -> Run {
    let g = load(graph)?;
    let need = lv.as_ref().map_or(0, |w| w.iter().sum()).max(k);
    let th = parse_thresholds(threshold, l, need)?;
    let mut tables = GoodnessTables::classify_paths(&g, k, th.clone())?;
    if let Some(w) = &lv {
        if w.iter().any(|&x| x > k) {
            return Err(Fail::Input(format!("--lv {w:?} has legs longer than --k {k}")));
        }
        tables.classify_spiders(&g, w)?;
    }
    let params = ClassifyParams {
        graph: graph.display().to_string(),
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        k,
        l,
        threshold: th.label(),
        lv,
    };
    let report = harness::classify_report(&g, &tables, params);
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn find(
    graph: &Path,
    desc: &PatternDescriptor,
    l: f64,
    threshold: &str,
    out: Option<&Path>,
    report: Option<&Path>,
    max_starts: usize,
    constructive_only: bool,
    budget: SearchBudget,
) -> Run {
    let g = load(graph)?;
    let (targets, t) = blowup_targets(desc)?;
    if max_starts == 0 {
        return Err(Fail::Input("--max-starts must be >= 1".into()));
    }
    let th = parse_thresholds(threshold, l, targets.iter().sum())?;
    let opts = FindOptions {
        l,
        max_starts,
        budget,
        constructive_only,
        ..FindOptions::default()
    };
    let r = find_blowup(&g, &targets, t, &th, &opts)?;
    if let Some(p) = report {
        let params = FindParams {
            graph: graph.display().to_string(),
            pattern: desc.to_string(),
            l,
            threshold: th.label(),
            max_starts,
            constructive_only,
        };
        emit(Some(p), &(harness::find_report_json(&g, &r, &params) + "\n"))?;
    }
    match (&r.status, &r.witness) {
        (FindStatus::Found, Some(w)) => {
            emit(out, &(w.to_json() + "\n"))?;
            log::info!("found via {:?} route", w.route);
            Ok(ExitCode::SUCCESS)
        }
        (FindStatus::BudgetExhausted, _) => {
            eprintln!("not found: oracle budget exhausted");
            Ok(ExitCode::from(1))
        }
        _ => {
            eprintln!("not found");
            Ok(ExitCode::from(1))
        }
    }
}

fn oracle_cmd(cmd: OracleCmd) -> Run {
    match cmd {
        OracleCmd::Contains {
            graph,
            pattern,
            out,
            budget,
        } => {
            let g = load(&graph)?;
            match oracle::contains(&g, &pattern, budget.budget()?)? {
                Containment::Found(w) => {
                    match out {
                        Some(p) => {
                            emit(Some(&p), &(w.to_json() + "\n"))?;
                            println!("present");
                        }
                        None => println!("present\n{}", w.to_json()),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Containment::Absent => {
                    println!("absent");
                    Ok(ExitCode::from(1))
                }
                Containment::BudgetExhausted => {
                    println!("budget-exhausted");
                    Ok(ExitCode::from(3))
                }
            }
        }
        OracleCmd::Extremal { n, pattern, out, budget } => {
            let r = oracle::extremal_number(n, &pattern, budget.budget()?)?;
            println!(
                "n={} pattern={} value={} exhaustive={}{}",
                r.n,
                r.pattern,
                r.value,
                r.exhaustive,
                if r.exhaustive { "" } else { " (heuristic lower bound)" }
            );
            if let Some(p) = out {
                emit(Some(&p), &r.witness.to_edge_list())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        OracleCmd::Hillclimb {
            n,
            pattern,
            iters,
            seed,
            out,
        } => {
            let g = oracle::hill_climb_free(n, &pattern, iters, seed)?;
            let free = oracle::is_pattern_free(&g, &pattern)?;
            let maximal = free && oracle::is_edge_maximal(&g, &pattern)?;
            if !maximal {
                eprintln!("hill-climb output failed verification");
                return Ok(ExitCode::FAILURE);
            }
            println!("n={n} pattern={pattern} edges={} free=true maximal=true (heuristic lower bound)", g.m());
            if let Some(p) = out {
                emit(Some(&p), &g.to_edge_list())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn gen(kind: GenKind, out: Option<&Path>) -> Run {
    let g = match kind {
        GenKind::Random { n, m, seed } => generators::random_gnm(n, m, seed)?,
        GenKind::Cycle { n } => generators::cycle(n)?,
        GenKind::Complete { n } => generators::complete(n),
        GenKind::Petersen => generators::petersen(),
        GenKind::Pattern { pattern } => {
            pattern.validate()?;
            pattern::instantiate(&pattern)
        }
        GenKind::Subdivide { graph, k } => pattern::subdivide(&load(&graph)?, k)?,
    };
    emit(out, &g.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(graph: &Path, witness: &Path) -> Run {
    let g = load(graph)?;
    let text = fs::read_to_string(witness).map_err(|e| Fail::Input(format!("{}: {e}", witness.display())))?;
    let w = Witness::from_json(&text)?;
    match oracle::check_embedding(&g, &w) {
        Ok(()) => {
            println!("valid");
            Ok(ExitCode::SUCCESS)
        }
        Err(why) => {
            println!("invalid: {why}");
            Ok(ExitCode::from(1))
        }
    }
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::Regularize {
            graph,
            epsilon,
            c,
            subgraph,
        } => regularize(&graph, epsilon, c, subgraph.as_deref()),
        Cmd::Spiders {
            cmd: SpiderCmd::Count { graph, lv, by_leaf },
        } => spiders_count(&graph, &lv, by_leaf),
        Cmd::Classify {
            graph,
            k,
            l,
            threshold,
            lv,
            out,
        } => classify(&graph, k, l, &threshold, lv, out.as_deref()),
        Cmd::Find {
            graph,
            pattern,
            l,
            threshold,
            out,
            report,
            max_starts,
            constructive_only,
            budget,
        } => find(
            &graph,
            &pattern,
            l,
            &threshold,
            out.as_deref(),
            report.as_deref(),
            max_starts,
            constructive_only,
            budget.budget()?,
        ),
        Cmd::Oracle { cmd } => oracle_cmd(cmd),
        Cmd::Sweep {
            pattern,
            n_range,
            seeds,
            iters,
            mode,
            timing,
            out,
        } => {
            let cfg = SweepConfig {
                pattern,
                n_range,
                seeds,
                mode,
                iters,
                timing,
            };
            let output = harness::sweep(&cfg)?;
            emit(out.as_deref(), &harness::sweep_csv(&cfg, &output))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { kind, out } => gen(kind, out.as_deref()),
        Cmd::Verify { graph, witness } => verify(&graph, &witness),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be >= 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(cli) {
        Ok(code) => code,
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use infogain::analysis::{self, AlphaGrid, TABLE1_ALPHAS};
use infogain::oracle::{run_suite, QuadratureSpec};
use infogain::{BetaPrior, Error, GainReport, Measure, Outcome, SweepTable, Tabular, TossSummary};

const MALUS_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(
    name = "infogain",
    version,
    about = "Information gain of coin tosses under beta priors"
)]
struct Cli {
    /// Output document format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Single prior α; conflicts with the grid flags.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["alpha_start", "alpha_stop", "alpha_step"])]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_stop: Option<f64>,
    #[arg(long)]
    alpha_step: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All gain measures for one (α, N, h, next).
    Gain {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value = "head")]
        next: Outcome,
    },
    /// Fraction of negative differential gains over h.
    Fon {
        #[command(flatten)]
        grid: GridArgs,
        /// Number of previous tosses; repeat for several.
        #[arg(long, required = true)]
        n: Vec<u64>,
        #[arg(long, default_value = "head")]
        next: Outcome,
    },
    /// Largest α with no negative differential gain.
    CriticalAlpha {
        #[arg(long, required = true)]
        n: Vec<u64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.9)]
        alpha_start: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
        alpha_stop: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha_step: f64,
        /// Bisection tolerance on α.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Mean and spread of a gain measure over h.
    Robustness {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, required = true)]
        n: Vec<u64>,
        #[arg(long, default_value = "diff")]
        measure: Measure,
        #[arg(long, default_value = "head")]
        next: Outcome,
    },
    /// Expected gain of the next toss for every h.
    Expected {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, required = true)]
        n: Vec<u64>,
    },
    /// Gains for N tails followed by a head.
    BlackSwan {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, required = true)]
        n: Vec<u64>,
    },
    /// Simulated sequence of tosses with per-step gains.
    Trajectory {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// True head probability.
        #[arg(long)]
        p: f64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numeric vs. asymptotic fraction of negatives.
    Table1 {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// Override the default priors; repeat for several.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Vec<f64>,
    },
    /// Closed forms against quadrature on random draws.
    Verify {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Malus-law mapping onto the Jeffreys prior.
    MalusCheck {
        #[arg(long, default_value_t = 1001)]
        grid_size: usize,
        #[arg(long, default_value_t = MALUS_TOL)]
        tol: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn flag(flag: &str, err: Error) -> Self {
        Self::usage(format!("{flag}: {err}"))
    }
}

struct Document {
    command: &'static str,
    params: Map<String, Value>,
    table: SweepTable,
    /// Extra line for standard error, and whether the run failed verification.
    summary: Option<(String, bool)>,
}

impl Document {
    fn new<T: Tabular>(command: &'static str, params: Value, rows: &[T]) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self {
            command,
            params,
            table: SweepTable::from_rows(rows),
            summary: None,
        }
    }
}

fn prior(flag: &str, alpha: f64) -> Result<BetaPrior, Failure> {
    BetaPrior::new(alpha).map_err(|e| Failure::flag(flag, e))
}

fn resolve_grid(grid: &GridArgs, default: (f64, f64, f64)) -> Result<(AlphaGrid, Value), Failure> {
    if let Some(a) = grid.alpha {
        prior("--alpha", a)?;
        let g = AlphaGrid::point(a).map_err(|e| Failure::flag("--alpha", e))?;
        return Ok((g, json!({ "alpha": a })));
    }
    let start = grid.alpha_start.unwrap_or(default.0);
    let stop = grid.alpha_stop.unwrap_or(default.1);
    let step = grid.alpha_step.unwrap_or(default.2);
    let g = AlphaGrid::new(start, stop, step)
        .map_err(|e| Failure::flag("--alpha-start/--alpha-stop/--alpha-step", e))?;
    Ok((
        g,
        json!({ "alpha_start": start, "alpha_stop": stop, "alpha_step": step }),
    ))
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

const DEFAULT_GRID: (f64, f64, f64) = (-0.9, 0.5, 0.05);

fn run(command: Command) -> Result<Document, Failure> {
    Ok(match command {
        Command::Gain { alpha, n, h, next } => {
            let p = prior("--alpha", alpha)?;
            let data = TossSummary::new(n, h).map_err(|e| Failure::flag("--h", e))?;
            let report = GainReport::new(p, data, next);
            let params = json!({ "alpha": alpha, "n": n, "h": h, "next": next.as_str() });
            Document::new("gain", params, &[report])
        }
        Command::Fon { grid, n, next } => {
            let (g, gp) = resolve_grid(&grid, DEFAULT_GRID)?;
            let rows = analysis::fon_sweep(&g, &n, next);
            Document::new(
                "fon",
                merge(gp, json!({ "n": n, "next": next.as_str() })),
                &rows,
            )
        }
        Command::CriticalAlpha {
            n,
            alpha_start,
            alpha_stop,
            alpha_step,
            tol,
        } => {
            let g = AlphaGrid::new(alpha_start, alpha_stop, alpha_step)
                .map_err(|e| Failure::flag("--alpha-start/--alpha-stop/--alpha-step", e))?;
            let rows = n
                .iter()
                .map(|&n| {
                    analysis::critical_alpha(n, &g, tol)
                        .map(|a| CriticalRow {
                            n,
                            critical_alpha: a,
                        })
                        .map_err(|e| Failure::flag("--alpha-start/--alpha-stop", e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let params = json!({
                "n": n, "alpha_start": alpha_start, "alpha_stop": alpha_stop,
                "alpha_step": alpha_step, "tol": tol,
            });
            Document::new("critical-alpha", params, &rows)
        }
        Command::Robustness {
            grid,
            n,
            measure,
            next,
        } => {
            let (g, gp) = resolve_grid(&grid, DEFAULT_GRID)?;
            let rows = analysis::robustness_sweep(&g, &n, measure, next)
                .map_err(|e| Failure::flag("--n", e))?;
            let params = json!({ "n": n, "measure": measure.as_str(), "next": next.as_str() });
            Document::new("robustness", merge(gp, params), &rows)
        }
        Command::Expected { grid, n } => {
            let (g, gp) = resolve_grid(&grid, DEFAULT_GRID)?;
            let rows = analysis::expected_sweep(&g, &n);
            Document::new("expected", merge(gp, json!({ "n": n })), &rows)
        }
        Command::BlackSwan { grid, n } => {
            let (g, gp) = resolve_grid(&grid, DEFAULT_GRID)?;
            let mut rows = Vec::new();
            for p in g.priors() {
                for &n in &n {
                    rows.push(
                        analysis::black_swan_report(p, n).map_err(|e| Failure::flag("--n", e))?,
                    );
                }
            }
            Document::new("black-swan", merge(gp, json!({ "n": n })), &rows)
        }
        Command::Trajectory {
            alpha,
            p,
            steps,
            seed,
        } => {
            let prior = prior("--alpha", alpha)?;
            let flag = if steps == 0 { "--steps" } else { "--p" };
            let rows =
                analysis::trajectory(prior, p, steps, seed).map_err(|e| Failure::flag(flag, e))?;
            let params = json!({ "alpha": alpha, "p": p, "steps": steps, "seed": seed });
            Document::new("trajectory", params, &rows)
        }
        Command::Table1 { n, alpha } => {
            let alphas = if alpha.is_empty() {
                TABLE1_ALPHAS.to_vec()
            } else {
                alpha
            };
            let rows = analysis::table1(n, &alphas).map_err(|e| Failure::flag("--alpha", e))?;
            Document::new("table1", json!({ "n": n, "alpha": alphas }), &rows)
        }
        Command::Verify { tol, samples, seed } => {
            let report =
                run_suite(samples, seed, tol, &QuadratureSpec::default()).map_err(|e| match e {
                    Error::InvalidInput(_) => Failure::flag("--samples/--tol", e),
                    other => Failure {
                        code: 2,
                        message: other.to_string(),
                    },
                })?;
            let params = json!({ "tol": tol, "samples": samples, "seed": seed });
            let mut doc = Document::new("verify", params, &report.rows);
            doc.summary = Some((report.summary(), !report.passed()));
            doc
        }
        Command::MalusCheck { grid_size, tol } => {
            let points =
                analysis::malus_points(grid_size).map_err(|e| Failure::flag("--grid-size", e))?;
            let dev = analysis::malus_mapping_check(grid_size)
                .map_err(|e| Failure::flag("--grid-size", e))?;
            let params = json!({ "grid_size": grid_size, "tol": tol });
            let mut doc = Document::new("malus-check", params, &points);
            doc.summary = Some((format!("max_deviation={dev:e}"), dev.is_nan() || dev > tol));
            doc
        }
    })
}

struct CriticalRow {
    n: u64,
    critical_alpha: f64,
}

impl Tabular for CriticalRow {
    fn columns() -> Vec<&'static str> {
        vec!["n", "critical_alpha"]
    }

    fn cells(&self) -> Vec<infogain::Cell> {
        vec![self.n.into(), self.critical_alpha.into()]
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            let rendered = err.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };

    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads: must be >= 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }

    let doc = match run(cli.command) {
        Ok(doc) => doc,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };

    let text = match cli.format {
        Format::Csv => doc.table.to_csv(),
        Format::Json => doc.table.to_json(doc.command, doc.params),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: --out: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }

    match doc.summary {
        Some((line, failed)) => {
            eprintln!("{line}");
            if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        None => ExitCode::SUCCESS,
    }
}

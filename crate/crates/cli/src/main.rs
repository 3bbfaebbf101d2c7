//! `mdpc`: search, inspect, simulate and bound MDPC cyclic codes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mdpc::codes::{macwilliams_transform, DEFAULT_BUDGET};
use mdpc::decoder::DEFAULT_CLIP;
use mdpc::io::{bound_csv, parse_weights, results_csv};
use mdpc::simulator::{run_observed, DEFAULT_MAX_FRAMES, DEFAULT_MIN_FRAME_ERRORS};
use mdpc::{
    search_mdpc, union_bound, AdConfig, CodeContext, CodeSpec, CyclicCode, EbnoGrid, Enumeration,
    Error, LmsMetric, ParityCheckMatrix, SimulationPlan, WeightDistribution,
};

const EXIT_OTHER: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;
const EXIT_RANK: u8 = 4;

#[derive(Parser)]
#[command(name = "mdpc", version, about = "MDPC cyclic code construction, decoding and simulation")]
#[command(after_help = "Exit status: 0 success, 1 other failure, 2 invalid input, 3 no code found, 4 rank-deficient parity-check matrix.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search coset combinations for the highest-rate code meeting a BCH-bound target.
    Search {
        /// Odd block length.
        #[arg(long)]
        n: usize,
        /// Required BCH bound.
        #[arg(long)]
        d: usize,
        /// Number of nonzero cosets combined into each candidate dual idempotent.
        #[arg(long)]
        nid: usize,
        /// Write the winning code spec here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print parameters of a code spec, optionally with its exact weight distribution.
    Inspect {
        #[arg(long)]
        code: PathBuf,
        /// Exact minimum distance and weight distribution. `brute` enumerates the
        /// smaller of the code and its dual; `dual-macwilliams` always enumerates
        /// the dual and applies the MacWilliams transform.
        #[arg(long, value_enum)]
        distance: Option<DistanceMethod>,
        /// Largest number of words to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Monte Carlo BER/FER of Auto-Diversity decoding over BPSK/AWGN.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        /// Parity-check rows: shifts of the dual idempotent. Limited to m <= n/2
        /// unless --allow-dense is given.
        #[arg(long)]
        m: usize,
        /// Sum-product iterations per diversity stage.
        #[arg(long, default_value_t = 50)]
        iters: usize,
        /// Diversity stages; 1 is plain belief propagation.
        #[arg(long, default_value_t = 30)]
        stages: usize,
        /// Eb/N0 in dB, as `start:step:stop` or a single value.
        #[arg(long, value_parser = parse_grid)]
        ebno: EbnoGrid,
        #[arg(long, default_value_t = DEFAULT_MIN_FRAME_ERRORS)]
        min_frame_errors: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_FRAMES)]
        max_frames: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all cores. Results do not depend on this.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Message magnitude clip in LLR units.
        #[arg(long, default_value_t = DEFAULT_CLIP)]
        clip: f64,
        /// Candidate selection after all stages fail.
        #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
        lms_metric: Metric,
        /// Allow m > n/2 rows.
        #[arg(long)]
        allow_dense: bool,
        /// Results CSV path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union bounds on ML BER and FER.
    Bound {
        #[arg(long)]
        code: PathBuf,
        /// A `delta,count` file, or `auto` to enumerate the exact distribution.
        #[arg(long)]
        weights: String,
        /// Eb/N0 in dB, as `start:step:stop` or a single value.
        #[arg(long, value_parser = parse_grid)]
        ebno: EbnoGrid,
        /// Largest number of words to enumerate with `--weights auto`.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Bound CSV path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceMethod {
    Brute,
    DualMacwilliams,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Euclidean,
    AbsoluteDifference,
}

fn parse_grid(s: &str) -> Result<EbnoGrid, String> {
    let nums: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let grid = match nums[..] {
        [x] => EbnoGrid::single(x),
        [start, step, stop] => EbnoGrid { start, step, stop },
        _ => return Err("expected `start:step:stop` or a single value".into()),
    };
    grid.points().map_err(|e| e.to_string())?;
    Ok(grid)
}

/// A failure with its exit status.
struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::RankDeficient { .. } => EXIT_RANK,
            Error::IncompleteDistribution { .. } | Error::MissingDualWeight(_) => EXIT_OTHER,
            _ => EXIT_VALIDATION,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        status: EXIT_OTHER,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure {
                    status: EXIT_OTHER,
                    message: format!("stdout: {e}"),
                }),
                _ => Ok(()),
            }
        }
    }
}

fn load_code(path: &Path) -> Result<CyclicCode, Failure> {
    let spec = CodeSpec::parse(&read(path)?).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        ..Failure::from(e)
    })?;
    Ok(spec.build()?)
}

/// Rate to three decimals, truncated.
fn rate_text(code: &CyclicCode) -> String {
    format!("{:.3} ({}/{})", (code.rate() * 1000.0).floor() / 1000.0, code.k(), code.n())
}

fn cmd_search(n: usize, d: usize, nid: usize, out: Option<&Path>) -> Result<(), Failure> {
    let ctx = CodeContext::new(n)?;
    let outcome = search_mdpc(&ctx, d, nid)?;
    let (Some(code), Some(selection)) = (outcome.best, outcome.selection) else {
        return Err(Failure {
            status: EXIT_NOT_FOUND,
            message: format!(
                "no code of length {n} with BCH bound >= {d} among {} combinations of {nid} cosets",
                outcome.examined
            ),
        });
    };
    eprintln!("n: {}", code.n());
    eprintln!("k: {}", code.k());
    eprintln!("rate: {}", rate_text(&code));
    eprintln!("bch_bound: {}", code.bch_bound());
    eprintln!("cosets: {selection:?}");
    eprintln!("examined: {}", outcome.examined);
    let name = format!("mdpc_{}_{}", code.n(), code.k());
    emit(out, &CodeSpec::from_code(&code, Some(name)).render())
}

fn render_distribution(out: &mut String, dist: &WeightDistribution) {
    out.push_str("weight distribution:\n");
    for (d, a) in dist.nonzero_terms() {
        out.push_str(&format!("  A_{d} = {a}\n"));
    }
}

fn cmd_inspect(path: &Path, distance: Option<DistanceMethod>, budget: u64) -> Result<(), Failure> {
    let code = load_code(path)?;
    let mut out = format!(
        "n: {}\nk: {}\nrate: {}\nidual weight: {}\nidempotent: yes\nbch_bound: {}\n",
        code.n(),
        code.k(),
        rate_text(&code),
        code.idual().weight(),
        code.bch_bound()
    );
    if let Some(w) = code.dual_min_weight() {
        out.push_str(&format!("dual_min_weight (declared): {w}\n"));
    }
    match distance {
        None => {}
        Some(DistanceMethod::Brute) => match code.weight_distribution(budget)? {
            Enumeration::Exact(dist) => {
                out.push_str(&format!("min distance: {}\n", dist.min_nonzero_weight().unwrap_or(0)));
                render_distribution(&mut out, &dist);
            }
            Enumeration::Infeasible { dimension, budget } => {
                out.push_str(&format!(
                    "min distance: infeasible (2^{dimension} words exceed budget {budget})\n"
                ));
            }
        },
        Some(DistanceMethod::DualMacwilliams) => match code.dual_weight_distribution(budget)? {
            Enumeration::Exact(dual) => {
                let dist = macwilliams_transform(&dual, code.n(), code.k())?;
                out.push_str(&format!("dual min weight: {}\n", dual.min_nonzero_weight().unwrap_or(0)));
                out.push_str(&format!("min distance: {}\n", dist.min_nonzero_weight().unwrap_or(0)));
                render_distribution(&mut out, &dist);
            }
            Enumeration::Infeasible { dimension, budget } => {
                out.push_str(&format!(
                    "min distance: infeasible (2^{dimension} words exceed budget {budget})\n"
                ));
            }
        },
    }
    emit(None, &out)
}

struct SimulateArgs {
    code: PathBuf,
    m: usize,
    ad: AdConfig,
    grid: EbnoGrid,
    min_frame_errors: u64,
    max_frames: u64,
    seed: u64,
    workers: usize,
    allow_dense: bool,
    out: Option<PathBuf>,
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let code = load_code(&a.code)?;
    let h = if a.allow_dense {
        ParityCheckMatrix::from_code_unguarded(&code, a.m)?
    } else {
        ParityCheckMatrix::from_code(&code, a.m)?
    };
    let mut plan = SimulationPlan::new(code, a.m, a.ad, a.grid);
    plan.min_frame_errors = a.min_frame_errors;
    plan.max_frames = a.max_frames;
    plan.seed = a.seed;
    plan.workers = a.workers;
    let records = run_observed(&plan, &h, |r| {
        eprintln!(
            "{:.2} dB: frames {} ber {:.3e} fer {:.3e} avg_iterations {:.3}",
            r.ebno_db, r.frames, r.ber, r.fer, r.avg_iterations
        );
    })?;
    emit(a.out.as_deref(), &results_csv(&records))
}

fn cmd_bound(path: &Path, weights: &str, grid: EbnoGrid, budget: u64, out: Option<&Path>) -> Result<(), Failure> {
    let code = load_code(path)?;
    let dist = if weights == "auto" {
        match code.weight_distribution(budget)? {
            Enumeration::Exact(d) => d,
            Enumeration::Infeasible { dimension, budget } => {
                return Err(Failure {
                    status: EXIT_OTHER,
                    message: format!(
                        "exact distribution needs 2^{dimension} words, over budget {budget}; \
                         pass a truncated `delta,count` file with --weights instead"
                    ),
                })
            }
        }
    } else {
        let wpath = Path::new(weights);
        parse_weights(&read(wpath)?, code.n()).map_err(|e| Failure {
            message: format!("{weights}: {e}"),
            ..Failure::from(e)
        })?
    };
    let curve = union_bound(&dist, code.n(), code.k(), &grid.points()?);
    if let Some(d) = curve.truncated_at {
        eprintln!("distribution truncated at delta = {d}; bounds are underestimates");
    }
    emit(out, &bound_csv(&curve))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Search { n, d, nid, out } => cmd_search(n, d, nid, out.as_deref()),
        Command::Inspect { code, distance, budget } => cmd_inspect(&code, distance, budget),
        Command::Simulate {
            code,
            m,
            iters,
            stages,
            ebno,
            min_frame_errors,
            max_frames,
            seed,
            workers,
            clip,
            lms_metric,
            allow_dense,
            out,
        } => {
            let mut ad = AdConfig::new(iters, stages)?;
            ad.clip = clip;
            ad.lms_metric = match lms_metric {
                Metric::Euclidean => LmsMetric::Euclidean,
                Metric::AbsoluteDifference => LmsMetric::AbsoluteDifference,
            };
            ad.validate()?;
            cmd_simulate(SimulateArgs {
                code,
                m,
                ad,
                grid: ebno,
                min_frame_errors,
                max_frames,
                seed,
                workers,
                allow_dense,
                out,
            })
        }
        Command::Bound {
            code,
            weights,
            ebno,
            budget,
            out,
        } => cmd_bound(&code, &weights, ebno, budget, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}

//! `chasebench`: generate games and gadget streams, run the reduction,
//! protocols and streaming algorithms, and run the check suites.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage or parse error,
//! 3 infeasible parameters.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use chasebench::chasing::{
    sample_uniform_intersect_sc, sample_uniform_lpce, sample_uniform_or_lpce, sample_uniform_pc,
    GameInstance, IntersectScInstance, ScInstance,
};
use chasebench::gadgets::{
    build_distance_gadget, build_matching_gadget, build_reachability_gadget, parse_stream,
    serialize_stream,
};
use chasebench::info::c_star_threshold;
use chasebench::protocol::{forward_sc_protocol, reverse_order_sc_protocol};
use chasebench::reduction::{choose_params, reduce_or_lpce, Reduction, ReductionParams};
use chasebench::seed::rng_from_seed;
use chasebench::streaming::{algorithm_by_name, run_streaming, RunReport};
use chasebench::verify::{run_suite, to_csv, Suite, VerifyConfig};
use chasebench::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chasebench", version, about = "Set chasing games, reductions and streaming hard instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pc,
    Sc,
    Lpce,
    Orlpce,
    Intersectsc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Distance,
    Reach,
    Matching,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProtocolKind {
    Forward,
    Reverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a game instance and write it as `scgame v1`.
    GenGame {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "orlpce")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// OR width; chosen from (n, p, r) when absent.
        #[arg(long)]
        t: Option<usize>,
        /// Non-injectivity threshold; the exact per-n threshold when absent.
        #[arg(long)]
        r: Option<usize>,
        /// Largest image size of sampled set functions.
        #[arg(long, default_value_t = 2)]
        max_out: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a gadget stream from a sampled, identity or given instance.
    GenGraph {
        #[arg(long, value_enum)]
        gadget: Gadget,
        #[arg(long)]
        seed: Option<u64>,
        /// Column width.
        #[arg(long)]
        k: Option<usize>,
        /// Target pass count; the instance has p + 1 layers per side.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_out: usize,
        /// Use the all-identity instance instead of sampling.
        #[arg(long)]
        identity: bool,
        /// An `intersectsc` game to build from.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce an OR instance (sampled or given) to set chasing intersection.
    Reduce {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// An `orlpce` game to reduce.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a set chasing protocol on an `intersectsc` game.
    SolveProtocol {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "forward")]
        protocol: ProtocolKind,
        /// Append the full transcript.
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a streaming algorithm on a `graphstream v1` file.
    StreamRun {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        passes: usize,
        #[arg(long)]
        input: PathBuf,
        /// Distance bound for the BFS algorithms; 2(p + 1) when absent.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        report: Report,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run check suites and print one CSV row per check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "csv")]
        report: Report,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Infeasible(String),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => Failure::Infeasible(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn need<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn read_game(path: &PathBuf) -> CliResult<GameInstance> {
    Ok(GameInstance::parse(&read(path)?)?)
}

fn gen_game(
    seed: u64,
    kind: Kind,
    n: usize,
    p: usize,
    t: Option<usize>,
    r: Option<usize>,
    max_out: usize,
) -> CliResult<GameInstance> {
    if n == 0 || p == 0 {
        return Err(Failure::Usage("--n and --p must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let r = r.unwrap_or_else(|| c_star_threshold(n));
    Ok(match kind {
        Kind::Pc => GameInstance::Pc(sample_uniform_pc(n, p, &mut rng)),
        Kind::Sc => GameInstance::Sc(sample_uniform_intersect_sc(n, p, max_out, &mut rng).left().clone()),
        Kind::Lpce => GameInstance::Lpce(sample_uniform_lpce(n, p, r, &mut rng)),
        Kind::Orlpce => {
            let t = match t {
                Some(t) => t,
                None => choose_params(n, p, r)?.t,
            };
            GameInstance::OrLpce(sample_uniform_or_lpce(n, p, r, t, &mut rng))
        }
        Kind::Intersectsc => GameInstance::IntersectSc(sample_uniform_intersect_sc(n, p, max_out, &mut rng)),
    })
}

fn intersect_input(path: &PathBuf) -> CliResult<IntersectScInstance> {
    match read_game(path)? {
        GameInstance::IntersectSc(inst) => Ok(inst),
        other => Err(Failure::Usage(format!("expected an intersectsc game, found {}", other.kind_name()))),
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::GenGame { seed, kind, n, p, t, r, max_out, output } => {
            let game = gen_game(seed, kind, n, p, t, r, max_out)?;
            emit(&output, &game.to_text())
        }
        Command::GenGraph { gadget, seed, k, p, max_out, identity, input, output } => {
            let inst = if let Some(path) = &input {
                intersect_input(path)?
            } else {
                let (k, p) = (need(k, "k")?, need(p, "p")?);
                if k == 0 {
                    return Err(Failure::Usage("--k must be positive".into()));
                }
                if identity {
                    IntersectScInstance::new(ScInstance::identity(k, p + 1), ScInstance::identity(k, p + 1))?
                } else {
                    let seed = need(seed, "seed")?;
                    sample_uniform_intersect_sc(k, p + 1, max_out, &mut rng_from_seed(seed))
                }
            };
            let g = match gadget {
                Gadget::Distance => build_distance_gadget(&inst),
                Gadget::Reach => build_reachability_gadget(&inst),
                Gadget::Matching => build_matching_gadget(&inst),
            };
            emit(&output, &serialize_stream(&g))
        }
        Command::Reduce { seed, n, p, t, r, input, output } => {
            let mut rng = rng_from_seed(seed);
            let inst = match &input {
                Some(path) => match read_game(path)? {
                    GameInstance::OrLpce(inst) => inst,
                    other => {
                        return Err(Failure::Usage(format!("expected an orlpce game, found {}", other.kind_name())))
                    }
                },
                None => {
                    let (n, p) = (need(n, "n")?, need(p, "p")?);
                    let r = r.unwrap_or_else(|| c_star_threshold(n));
                    let params = match t {
                        Some(t) => ReductionParams::new(n, p, r, t)?,
                        None => choose_params(n, p, r)?,
                    };
                    sample_uniform_or_lpce(n, p, r, params.t, &mut rng)
                }
            };
            let text = match reduce_or_lpce(&inst, &mut rng)? {
                Reduction::ShortCircuit { equality_holds } => {
                    format!("shortcircuit answer=1 equality={}\n", u8::from(equality_holds))
                }
                Reduction::Instance(reduced) => GameInstance::IntersectSc(reduced).to_text(),
            };
            emit(&output, &text)
        }
        Command::SolveProtocol { input, protocol, dump, output } => {
            let inst = intersect_input(&input)?;
            let (answer, transcript) = match protocol {
                ProtocolKind::Forward => forward_sc_protocol(&inst),
                ProtocolKind::Reverse => reverse_order_sc_protocol(&inst),
            };
            let mut text = format!(
                "answer,rounds,total_bits\n{},{},{}\n",
                u8::from(answer),
                transcript.rounds_used(),
                transcript.total_bits()
            );
            if dump {
                text.push_str(&transcript.dump());
            }
            emit(&output, &text)
        }
        Command::StreamRun { alg, passes, input, bound, report: Report::Csv, output } => {
            let g = parse_stream(&read(&input)?)?;
            let bound = bound.unwrap_or(2 * (g.passes_hint() + 1));
            let mut alg = algorithm_by_name(&alg, bound)?;
            let result = run_streaming(alg.as_mut(), &g, passes)?;
            emit(&output, &format!("{}\n{}\n", RunReport::csv_header(), result.csv_row()))
        }
        Command::Verify { suite, seed, trials, report: Report::Csv, output } => {
            let suite = Suite::parse(&suite)?;
            let rows = run_suite(suite, &VerifyConfig { seed, trials });
            emit(&output, &to_csv(&rows))?;
            let failed: Vec<_> = rows.iter().filter(|r| !r.passed).collect();
            for row in &failed {
                eprintln!("FAILED {},{}: measured {} want {}", row.suite, row.check, row.measured, row.threshold);
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Checks(failed.len()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

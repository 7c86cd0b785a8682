//! Command-line front end: build witness sets, extract and verify witnesses,
//! sweep coloring spaces, render figures, report construction statistics.
//!
//! Exit codes: 0 success or valid; 1 verification failed; 2 usage error
//! (including unreadable input files); 3 resource limit; 4 file-format
//! error. Primary output goes to stdout unless `--out` is given; timing and
//! diagnostics go to stderr so stdout stays byte-deterministic.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use gallai_core::base::BaseSequence;
use gallai_core::budget::{ResourceBudget, BUDGET_POINTS_ENV};
use gallai_core::construct::Builder;
use gallai_core::error::{Error, Result};
use gallai_core::extract::{witness_homothety, Extractor};
use gallai_core::geometry::PointSet;
use gallai_core::io::{
    parse_base, parse_coloring, parse_set, parse_witness, write_delta_witness, write_phi_witness,
    write_set, write_sweep_report, WitnessFile,
};
use gallai_core::svg::render_svg;
use gallai_core::verify::{
    check_delta_witness, check_phi_witness, exhaustive_sweep, random_sweep, Strategy, SweepTarget,
};

/// Largest index the built-in moment base provides; enough for any instance
/// that fits the default budgets.
const MOMENT_PRESET_MAX_INDEX: usize = 8;

#[derive(Parser)]
#[command(
    name = "gallai",
    version,
    about = "Exact-arithmetic engine for Gallai witness sets"
)]
struct Cli {
    /// Base sequence: preset `moment` (e_i = (i, i^2)) or `fig1`, or a path
    /// to a gallai-base file.
    #[arg(long, global = true, default_value = "moment")]
    base: String,

    /// Worker threads for parallel enumeration and sweeps (0 picks the
    /// default). Output bytes do not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct Phi(n,k), or Delta(n,k,m) when --m is given, as a set file.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a monochromatic witness from a coloring file and write it,
    /// self-verifying before output.
    Extract {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness file against a coloring and a set.
    Verify {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Run extraction and checking over a whole coloring space.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: Option<u64>,
        /// Try every coloring of the target set.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Try this many seeded random colorings instead.
        #[arg(long)]
        random: Option<u64>,
        /// First seed for --random; trial t uses seed + t.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// What to run per coloring (exhaustive sweeps only; random sweeps
        /// always run the extractor).
        #[arg(long, value_enum, default_value_t = StrategyArg::Extractor)]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print per-level cardinalities and homothety counts for a construction.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Render a set file as an SVG scatter, optionally overlaying the images
    /// of a witness as hollow markers.
    Render {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Extractor,
    Oracle,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(value: StrategyArg) -> Strategy {
        match value {
            StrategyArg::Extractor => Strategy::Extractor,
            StrategyArg::Oracle => Strategy::Oracle,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    };
    std::process::exit(code);
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => 3,
        Error::Format { .. } => 4,
        Error::InternalProof(_) => 1,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let base = resolve_base(&cli.base)?;
    let builder = Builder::new(base, budget_from_env()?);
    if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| Error::precondition(format!("cannot build thread pool: {e}")))?;
        pool.install(|| dispatch(&cli.command, &builder))
    } else {
        dispatch(&cli.command, &builder)
    }
}

fn resolve_base(spec: &str) -> Result<BaseSequence> {
    match spec {
        "moment" | "fig1" => BaseSequence::preset(spec, MOMENT_PRESET_MAX_INDEX),
        path => parse_base(&read_file(Path::new(path))?),
    }
}

fn budget_from_env() -> Result<ResourceBudget> {
    let mut budget = ResourceBudget::default();
    if let Ok(raw) = std::env::var(BUDGET_POINTS_ENV) {
        let points = raw.parse().map_err(|_| {
            Error::precondition(format!(
                "{BUDGET_POINTS_ENV} must be a positive integer, found {raw:?}"
            ))
        })?;
        budget = ResourceBudget::new(points, budget.max_color_count)?;
    }
    Ok(budget)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::precondition(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(command: &Command, builder: &Builder) -> Result<i32> {
    match command {
        Command::Build { n, k, m, out } => {
            let kk = BigUint::from(*k);
            let set = match m {
                Some(m) => builder.delta(*n, &kk, *m)?,
                None => builder.phi(*n, &kk)?,
            };
            emit(out, &write_set(&set))?;
            Ok(0)
        }
        Command::Extract {
            n,
            k,
            m,
            coloring,
            out,
        } => {
            let f = parse_coloring(&read_file(coloring)?)?;
            let kk = BigUint::from(*k);
            if f.arity() > &kk {
                return Err(Error::precondition(format!(
                    "coloring arity {} exceeds --k {k}",
                    f.arity()
                )));
            }
            let extractor = Extractor::new(builder);
            let text = match m {
                Some(m) => {
                    let w = extractor.extract_delta(*n, &kk, *m, &f)?;
                    write_delta_witness(&w)
                }
                None => {
                    let w = extractor.extract_phi(*n, &kk, &f)?;
                    write_phi_witness(&w)
                }
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Verify {
            witness,
            coloring,
            set,
        } => {
            let w = parse_witness(&read_file(witness)?)?;
            let f = parse_coloring(&read_file(coloring)?)?;
            let target = parse_set(&read_file(set)?)?;
            let report = match &w {
                WitnessFile::Phi(w) => check_phi_witness(&f, w, &target, builder.base())?,
                WitnessFile::Delta(w) => check_delta_witness(&f, w, &target, builder.base())?,
            };
            if report.valid() {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid: {}", report.summary());
                Ok(1)
            }
        }
        Command::Sweep {
            n,
            k,
            m,
            exhaustive,
            random,
            seed,
            strategy,
            out,
        } => {
            let target = match m {
                Some(m) => SweepTarget::Delta { n: *n, k: *k, m: *m },
                None => SweepTarget::Phi { n: *n, k: *k },
            };
            let report = match (exhaustive, random) {
                (true, None) => exhaustive_sweep(builder, target, (*strategy).into())?,
                (false, Some(trials)) => {
                    if *strategy != StrategyArg::Extractor {
                        return Err(Error::precondition(
                            "random sweeps always run the extractor strategy; \
                             drop --strategy",
                        ));
                    }
                    random_sweep(builder, target, *trials, *seed)?
                }
                _ => {
                    return Err(Error::precondition(
                        "choose exactly one of --exhaustive or --random <trials>",
                    ));
                }
            };
            eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
            emit(out, &write_sweep_report(&report))?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Stats { n, k, m } => {
            let kk = BigUint::from(*k);
            let size = match m {
                Some(m) => builder.delta(*n, &kk, *m)?.len(),
                None => builder.phi(*n, &kk)?.len(),
            };
            let mut text = String::new();
            for event in builder.trace() {
                text.push_str(&format!("{event}\n"));
            }
            text.push_str(&format!("result size={size}\n"));
            print!("{text}");
            Ok(0)
        }
        Command::Render { set, witness, out } => {
            let target = parse_set(&read_file(set)?)?;
            let hollow = match witness {
                Some(path) => witness_images(&parse_witness(&read_file(path)?)?, builder)?,
                None => PointSet::empty(),
            };
            emit(out, &render_svg(&target, &hollow)?)?;
            Ok(0)
        }
    }
}

/// All points a witness marks: `h(S_n)` for a single copy, the union of the
/// pair-homothety images for a scalar system.
fn witness_images(w: &WitnessFile, builder: &Builder) -> Result<PointSet> {
    match w {
        WitnessFile::Phi(w) => {
            let prefix = builder.base().prefix_set(w.n)?;
            Ok(w.h.image(&prefix))
        }
        WitnessFile::Delta(system) => {
            let prefix = builder.base().prefix_set(system.n())?;
            let mut points = Vec::new();
            for i in 0..=system.m() {
                for j in i + 1..=system.m() {
                    let h = witness_homothety(system, i, j, builder.base())?;
                    points.extend(h.image(&prefix).iter().cloned());
                }
            }
            Ok(PointSet::from_points(points))
        }
    }
}

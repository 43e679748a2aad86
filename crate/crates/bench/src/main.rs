//! CLI entry point. Exit codes: 0 success, 1 usage/config error,
//! 2 runtime error, 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use okm_bench::config::{DatasetConfig, ExperimentConfig, Recipe};
use okm_bench::report::{render, OutputFormat};
use okm_bench::runner::{materialize, run_experiment, run_suite, write_prepared};
use okm_bench::verify::{run_verify, VerifyLevel};

#[derive(Parser)]
#[command(name = "okm-bench", about = "Outlier-robust k-means seeding benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset (CSV + manifest).
    Gen(GenArgs),
    /// Prepare a real dataset with an outlier-labeling recipe.
    Prep(PrepArgs),
    /// Run a single experiment and print one table row.
    Run(RunArgs),
    /// Run a JSON config file of experiments.
    Suite(SuiteArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Inlier count.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Planted cluster count.
    #[arg(long, default_value_t = 20)]
    k: usize,
    /// Planted outlier count.
    #[arg(long, default_value_t = 25)]
    z: usize,
    /// Hypercube side length.
    #[arg(long, default_value_t = 100.0)]
    side: f64,
    /// Cluster standard deviation.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory (receives data.csv and manifest.json).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PrepArgs {
    /// Input CSV.
    #[arg(long)]
    input: PathBuf,
    /// Zero-based numeric column indices, comma separated (e.g. 0,1,2).
    #[arg(long, value_delimiter = ',')]
    columns: Vec<usize>,
    /// Zero-based class-label column.
    #[arg(long)]
    label_col: Option<usize>,
    /// Input has a header row.
    #[arg(long)]
    header: bool,
    /// Z-score normalize features.
    #[arg(long)]
    normalize: bool,
    /// Recipe: small-class | min-fraction | noise.
    #[arg(long)]
    recipe: Option<String>,
    /// Major class names for small-class (comma separated).
    #[arg(long, value_delimiter = ',')]
    major: Vec<String>,
    /// Fraction threshold for min-fraction.
    #[arg(long)]
    min_fraction: Option<f64>,
    /// Points to perturb for noise (count).
    #[arg(long)]
    noise_count: Option<usize>,
    /// Points to perturb for noise (fraction).
    #[arg(long)]
    noise_fraction: Option<f64>,
    /// Noise standard deviation; default 5x average column std.
    #[arg(long)]
    noise_sigma: Option<f64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory (receives data.csv and manifest.json).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// rand | km++ | tkm++ | rkm++ | robust.
    #[arg(long)]
    algorithm: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    z: usize,
    /// Centers to draw (default: k, or ceil((1+c)k) with --c).
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Bi-criteria oversampling parameter.
    #[arg(long)]
    c: Option<f64>,
    /// Outliers to mark after seeding (default z).
    #[arg(long)]
    predicted_z: Option<usize>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Prepared dataset (directory or data.csv). Omit for synthetic data.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Synthetic inlier count (when --data is absent).
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Planted cluster count (default k).
    #[arg(long)]
    planted_k: Option<usize>,
    /// Planted outlier count (default z).
    #[arg(long)]
    true_z: Option<usize>,
    #[arg(long, default_value_t = 42)]
    data_seed: u64,
    /// Presentation divisor for cost cells in markdown/csv.
    #[arg(long)]
    cost_scale: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SuiteArgs {
    /// JSON array of experiment configs.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// csv | markdown | json.
    #[arg(long, default_value = "markdown")]
    format: OutputFormat,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parallel repetitions (results are identical at any thread count).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Include the mean seeding-time column (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// fast | full.
    #[arg(long, default_value = "fast")]
    level: VerifyLevel,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes; everything else is usage
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Prep(args) => prep(args),
        Command::Run(args) => run(args),
        Command::Suite(args) => suite(args),
        Command::Verify(args) => verify(args),
    }
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let ds = materialize(&DatasetConfig::Synthetic {
        n: args.n,
        d: args.d,
        k: args.k,
        z: args.z,
        side: args.side,
        sigma: args.sigma,
        seed: args.seed,
    })?;
    let recipe = format!(
        "synthetic n={} d={} k={} z={} side={} sigma={}",
        args.n, args.d, args.k, args.z, args.side, args.sigma
    );
    write_prepared(&ds, &recipe, Some(args.seed), &args.out)?;
    eprintln!(
        "wrote {} points ({} outliers) to {}",
        ds.points.n(),
        args.z,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn prep(args: PrepArgs) -> Result<ExitCode> {
    if args.columns.is_empty() {
        bail!("--columns must name at least one numeric column");
    }
    let recipe = match args.recipe.as_deref() {
        Some("small-class") => {
            if args.major.is_empty() {
                bail!("small-class recipe needs --major");
            }
            Some(Recipe::SmallClass {
                major: args.major.clone(),
            })
        }
        Some("min-fraction") => Some(Recipe::MinFraction {
            fraction: args
                .min_fraction
                .context("min-fraction recipe needs --min-fraction")?,
        }),
        Some("noise") => Some(Recipe::Noise {
            count: args.noise_count,
            fraction: args.noise_fraction,
            sigma: args.noise_sigma,
            seed: args.seed,
        }),
        Some(other) => bail!("unknown recipe {other:?} (small-class, min-fraction, noise)"),
        None => None,
    };
    let recipe_echo = args.recipe.clone().unwrap_or_else(|| "none".to_string());
    let ds = materialize(&DatasetConfig::Csv {
        path: args.input.clone(),
        numeric_columns: args.columns.clone(),
        label_column: args.label_col,
        has_header: args.header,
        normalize: args.normalize,
        recipe,
    })?;
    let outliers = ds.true_outliers().map(|o| o.len()).unwrap_or(0);
    write_prepared(&ds, &recipe_echo, Some(args.seed), &args.out)?;
    eprintln!(
        "prepared {} points ({} outliers, recipe {}) into {}",
        ds.points.n(),
        outliers,
        recipe_echo,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let dataset = match &args.data {
        Some(path) => DatasetConfig::Prepared { path: path.clone() },
        None => DatasetConfig::Synthetic {
            n: args.n,
            d: args.d,
            k: args.planted_k.unwrap_or(args.k),
            z: args.true_z.unwrap_or(args.z),
            side: 100.0,
            sigma: 1.0,
            seed: args.data_seed,
        },
    };
    let cfg = ExperimentConfig {
        name: None,
        dataset,
        algorithm: args.algorithm.clone(),
        k: args.k,
        z: args.z,
        t: args.t,
        eta: args.eta,
        beta: args.beta,
        alpha: args.alpha,
        delta: args.delta,
        c: args.c,
        predicted_z: args.predicted_z,
        reps: args.reps,
        base_seed: args.seed,
        cost_scale: args.cost_scale,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("config error: {e:#}");
        return Ok(ExitCode::from(1));
    }
    let mut row = run_experiment(&cfg, args.output.threads)?;
    if !args.output.timing {
        row = row.without_timing();
    }
    emit(&[row], &args.output)?;
    Ok(ExitCode::SUCCESS)
}

fn suite(args: SuiteArgs) -> Result<ExitCode> {
    let configs = match okm_bench::config::load_suite(&args.config) {
        Ok(configs) => configs,
        Err(e) => {
            eprintln!("config error: {e:#}");
            return Ok(ExitCode::from(1));
        }
    };
    let mut rows = run_suite(&configs, args.output.threads);
    if !args.output.timing {
        rows = rows.into_iter().map(|r| r.without_timing()).collect();
    }
    emit(&rows, &args.output)?;
    Ok(ExitCode::SUCCESS)
}

fn emit(rows: &[okm_bench::report::TableRow], output: &OutputArgs) -> Result<()> {
    let text = render(rows, output.format);
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let outcomes = run_verify(args.level);
    let mut failed = false;
    for outcome in &outcomes {
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2} [{status}] {} — {}",
            outcome.index, outcome.name, outcome.detail
        );
        failed |= !outcome.pass;
    }
    Ok(if failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

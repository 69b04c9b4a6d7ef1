use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use interaction_cli::experiment::{run_experiment, Budget, ExperimentConfig, Method};
use interaction_cli::report::{write_report, Format};
use interaction_cli::reproduce::{cross_group_comparison, reproduce, write_benchmark_csv, Methods, ReproduceConfig};
use interaction_cli::source::read_spec;
use interaction_index::measure::{check_axioms, presets, MonotoneCheck, MAX_EXHAUSTIVE};
use interaction_index::{Measure, Measure64};

/// Exact and sampled pairwise interaction indices of fuzzy measures.
///
/// Element labels are 1-based on input and output.
#[derive(Parser)]
#[command(name = "interaction", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact `I_ij` for one pair, all pairs, or `I_T` for a set.
    Exact {
        /// Preset (`mu1`..`mu4`) or measure spec JSON file.
        #[arg(long)]
        measure: String,
        #[arg(long, num_args = 2, value_names = ["I", "J"], conflicts_with = "set")]
        pair: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled `I_ij` for all pairs.
    Estimate {
        #[arg(long, value_enum)]
        method: SamplingMethod,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled representation index `I_T` for a set of at least two elements.
    InteractionT {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long, value_enum, default_value = "simple")]
        method: SamplingMethod,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Error table for one of the reference examples.
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        example: u8,
        #[arg(long, value_delimiter = ',', default_values_t = [1000u64, 10000])]
        avg_data: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0u64])]
        seeds: Vec<u64>,
        /// One row per AvgData, averaged over seeds.
        #[arg(long)]
        aggregate: bool,
        /// Allow runs above 10^9 observations per seed.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        skip_simple: bool,
        #[arg(long)]
        skip_stratified: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check `μ(∅) = 0`, `μ(X) ≤ 1` and monotonicity; exits 2 on a violation.
    CheckMeasure {
        /// Preset or measure spec JSON file.
        spec: String,
        /// Random chains; the check is exhaustive up to 15 players when omitted.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SamplingMethod {
    Simple,
    Stratified,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long)]
    measure: String,
    /// Observations per pair.
    #[arg(long, conflicts_with = "total_data", required_unless_present = "total_data")]
    avg_data: Option<u64>,
    #[arg(long)]
    total_data: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.001)]
    alpha: f64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 0.5)]
    pilot_fraction: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl OutputArgs {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn zero_based(labels: &[usize]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|&l| match l {
            0 => bail!("element labels start at 1"),
            l => Ok(l - 1),
        })
        .collect()
}

fn sampling_config(method: SamplingMethod, args: &SamplingArgs) -> ExperimentConfig {
    let method = match method {
        SamplingMethod::Simple => Method::Simple,
        SamplingMethod::Stratified => Method::Stratified,
    };
    let mut config = ExperimentConfig::new(args.measure.clone(), method);
    config.budget = match (args.avg_data, args.total_data) {
        (Some(avg), _) => Some(Budget::AvgData(avg)),
        (None, Some(total)) => Some(Budget::TotalData(total)),
        (None, None) => None,
    };
    config.seed = args.seed;
    config.alpha = args.alpha;
    config.workers = args.workers;
    config.pilot_fraction = args.pilot_fraction;
    config
}

fn emit(config: &ExperimentConfig, output: &OutputArgs) -> Result<()> {
    let report = run_experiment(config)?;
    let mut out = output.writer()?;
    write_report(&mut out, &report, output.format)?;
    out.flush()?;
    Ok(())
}

fn load_unchecked(source: &str) -> Result<Measure64> {
    if let Some(m) = presets::preset(source) {
        return Ok(m);
    }
    Ok(read_spec(Path::new(source))?.build_unchecked()?)
}

fn check_measure(spec: &str, trials: Option<usize>, seed: u64) -> Result<bool> {
    let measure = load_unchecked(spec)?;
    let players = measure.players().len();
    let mode = match trials {
        Some(trials) => MonotoneCheck::Sampled { trials, seed },
        None if players <= MAX_EXHAUSTIVE => MonotoneCheck::Exhaustive,
        None => MonotoneCheck::Sampled { trials: 10_000, seed },
    };
    let report = check_axioms(&measure, mode)?;
    let verdict = |ok: bool| if ok { "ok" } else { "VIOLATED" };
    println!("players: {players}");
    println!("empty set value {} : {}", report.empty_value, verdict(report.empty_is_zero()));
    println!("full set value {} : {}", report.full_value, verdict(report.full_at_most_one()));
    let mono = &report.monotonicity;
    let how = match mode {
        MonotoneCheck::Exhaustive => "exhaustive".to_string(),
        MonotoneCheck::Sampled { trials, .. } => format!("{trials} random chains"),
    };
    println!("monotonicity ({how}, {} comparisons): {}", mono.comparisons, verdict(mono.is_monotone));
    if let Some((smaller, larger)) = &mono.witness {
        let labels = |c: &interaction_index::Coalition| c.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",");
        println!(
            "  mu({{{}}}) = {} > mu({{{}}}) = {}",
            labels(smaller),
            measure.value(smaller),
            labels(larger),
            measure.value(larger)
        );
    }
    Ok(report.holds())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Exact { measure, pair, set, output } => {
            let mut config = ExperimentConfig::new(measure, Method::Exact);
            if let Some(pair) = pair {
                let p = zero_based(&pair)?;
                config.pair = Some((p[0], p[1]));
            }
            config.set = set.as_deref().map(zero_based).transpose()?;
            emit(&config, &output)?;
        }
        Command::Estimate { method, sampling, output } => {
            emit(&sampling_config(method, &sampling), &output)?;
        }
        Command::InteractionT { set, method, sampling, output } => {
            let mut config = sampling_config(method, &sampling);
            config.set = Some(zero_based(&set)?);
            emit(&config, &output)?;
        }
        Command::Reproduce { example, avg_data, seeds, aggregate, force, workers, skip_simple, skip_stratified, output } => {
            let methods = Methods { simple: !skip_simple, stratified: !skip_stratified };
            if !methods.simple && !methods.stratified {
                bail!("nothing to run: both estimators skipped");
            }
            let config = ReproduceConfig { example, avg_data, seeds, aggregate, force, workers, methods };
            if example == 4 {
                let (exact, reference) = cross_group_comparison()?;
                eprintln!("cross-group I_ij: exact {exact:e}, reference {reference:e}");
            }
            let rows = reproduce(&config)?;
            let mut out = output.writer()?;
            match output.format {
                Format::Csv => write_benchmark_csv(&mut out, &rows)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &rows)?;
                    writeln!(out)?;
                }
            }
            out.flush()?;
        }
        Command::CheckMeasure { spec, trials, seed } => {
            if !check_measure(&spec, trials, seed)? {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

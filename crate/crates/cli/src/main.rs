//! `fim`: generate baskets, mine frequent itemsets, benchmark and cross-check miners.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fim_core::bench::{self, ExperimentKind};
use fim_core::datagen::{self, GeneratorConfig};
use fim_core::scalar::parse_decimal_ratio;
use fim_core::verify::{self, drop_last_entry};
use fim_core::{
    mine, write_result, Algorithm, Error, ExactExperimentSpec, ExactSupportThreshold, MineOptions,
    Threshold, TransactionDatabase,
};

#[global_allocator]
static ALLOC: fim_core::alloc::TrackingAllocator = fim_core::alloc::TrackingAllocator;

const SEED_ENV: &str = "FIM_SEED";

#[derive(Debug, Parser)]
#[command(name = "fim", version, about = "Frequent itemset mining toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic basket dataset.
    Generate(GenerateArgs),
    /// Mine frequent itemsets from a basket file.
    Mine(MineArgs),
    /// Time the miners over a parameter sweep of generated datasets.
    Bench(BenchArgs),
    /// Run every miner on one input and compare the results.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    /// 100k baskets, 5k items, 10 frequent sets.
    Desk,
}

#[derive(Debug, Args)]
struct GeneratorFlags {
    /// Number of baskets.
    #[arg(long)]
    baskets: Option<u64>,
    /// Number of distinct padding items.
    #[arg(long)]
    items: Option<u32>,
    /// Number of planted frequent sets.
    #[arg(long)]
    frequent_sets: Option<u32>,
    /// Maximum basket size.
    #[arg(long)]
    max_basket: Option<u32>,
    /// Probability that a basket embeds a planted set.
    #[arg(long)]
    density: Option<f64>,
    /// RNG seed; the FIM_SEED environment variable takes precedence.
    #[arg(long)]
    seed: Option<u64>,
    /// Start from a named configuration instead of the full-scale defaults.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
}

impl GeneratorFlags {
    fn config(&self) -> Result<GeneratorConfig, Error> {
        let cfg = self.build()?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies flags over the preset without validating; the bench sweep
    /// validates each point after applying its parameter.
    fn build(&self) -> Result<GeneratorConfig, Error> {
        let mut cfg = match self.preset {
            Some(Preset::Desk) => GeneratorConfig::desk(),
            None => GeneratorConfig::default(),
        };
        if let Some(v) = self.baskets {
            cfg.basket_count = v;
        }
        if let Some(v) = self.items {
            cfg.item_count = v;
        }
        if let Some(v) = self.frequent_sets {
            cfg.frequent_set_count = v;
        }
        if let Some(v) = self.max_basket {
            cfg.max_basket_size = v;
        }
        if let Some(v) = self.density {
            cfg.density = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Ok(text) = std::env::var(SEED_ENV) {
            cfg.seed = text
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{SEED_ENV}={text:?} is not a decimal seed")))?;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct MinerFlags {
    /// Worker threads for Apriori support counting.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Byte budget for Apriori candidate tables, in KiB.
    #[arg(long)]
    memory_limit_kb: Option<usize>,
}

impl MinerFlags {
    fn options(&self) -> Result<MineOptions, Error> {
        if self.threads == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        Ok(MineOptions {
            threads: self.threads,
            memory_limit: self.memory_limit_kb.map(|kb| kb.saturating_mul(1 << 10)),
        })
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    generator: GeneratorFlags,
    /// Dataset file to write.
    #[arg(long)]
    output: PathBuf,
    /// Also write one 0/1 line per basket marking embedded planted sets.
    #[arg(long)]
    flags_output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MineArgs {
    /// naive, apriori, eclat or fpgrowth.
    #[arg(long)]
    algorithm: String,
    /// Absolute count such as `2`, or a fraction such as `0.6`.
    #[arg(long)]
    min_support: String,
    /// Basket file, one basket per line.
    #[arg(long)]
    input: PathBuf,
    /// Result file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    miner: MinerFlags,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// density or basket-size.
    #[arg(long)]
    experiment: String,
    #[command(flatten)]
    generator: GeneratorFlags,
    /// Timed runs per algorithm and point.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Absolute count or fraction, applied at every point.
    #[arg(long, default_value = "0.01")]
    min_support: String,
    /// Directory for the CSV, SVG and failure reports.
    #[arg(long, default_value = "bench-out")]
    output_dir: PathBuf,
    #[command(flatten)]
    miner: MinerFlags,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Basket file, one basket per line.
    #[arg(long)]
    input: PathBuf,
    /// Absolute count such as `2`, or a fraction such as `0.6`.
    #[arg(long)]
    min_support: String,
    /// Include the brute-force miner as the reference.
    #[arg(long)]
    against_naive: bool,
    #[command(flatten)]
    miner: MinerFlags,
    /// Corrupt one miner's output before comparing.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

/// Process outcome: success, or an error with its exit status.
enum Failure {
    Error(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Config(_) | Error::Threshold(_) | Error::Capacity { .. } => 1,
        _ => 2,
    }
}

fn parse_min_support(text: &str) -> Result<ExactSupportThreshold, Error> {
    let threshold = if text.contains('.') {
        let ratio = parse_decimal_ratio(text)
            .ok_or_else(|| Error::Threshold(format!("{text:?} is not a decimal fraction")))?;
        Threshold::Relative(ratio)
    } else {
        let count = text
            .parse()
            .map_err(|_| Error::Threshold(format!("{text:?} is not a decimal count")))?;
        Threshold::Absolute(count)
    };
    threshold.validate()?;
    Ok(threshold)
}

fn load(path: &PathBuf) -> Result<TransactionDatabase, Error> {
    let file = File::open(path)?;
    TransactionDatabase::parse(BufReader::new(file))
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let config = args.generator.config()?;
    let sink = BufWriter::new(File::create(&args.output)?);
    let mut flags = match &args.flags_output {
        Some(path) => Some(BufWriter::new(File::create(path)?)),
        None => None,
    };
    datagen::generate(&config, sink, flags.as_mut().map(|w| w as &mut dyn Write))?;
    Ok(())
}

fn cmd_mine(args: &MineArgs) -> Result<(), Failure> {
    let algorithm: Algorithm = args.algorithm.parse()?;
    let sigma = parse_min_support(&args.min_support)?;
    let options = args.miner.options()?;
    let db = load(&args.input)?;
    let result = mine(algorithm, &db, &sigma, &options)?;
    match &args.output {
        Some(path) => write_result(
            &result,
            db.dictionary(),
            BufWriter::new(File::create(path)?),
        )?,
        None => write_result(
            &result,
            db.dictionary(),
            BufWriter::new(io::stdout().lock()),
        )?,
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let kind: ExperimentKind = args.experiment.parse()?;
    let sigma = parse_min_support(&args.min_support)?;
    let base = args.generator.build()?;
    let mut spec = ExactExperimentSpec::new(kind, base, sigma);
    spec.trials = args.trials;
    spec.options = args.miner.options()?;
    if spec.trials == 0 {
        return Err(Error::Usage("--trials must be at least 1".into()).into());
    }
    let param = kind.param_name();
    let report = bench::run_experiment_with_progress(&spec, |t| {
        let outcome = match (&t.itemsets_found, &t.error) {
            (Some(n), _) => format!("{n} itemsets in {:.3}s", t.wall_seconds),
            (None, Some(e)) => format!("FAILED after {:.3}s: {e}", t.wall_seconds),
            (None, None) => "no result".to_owned(),
        };
        eprintln!(
            "{param}={} {} trial {}: {outcome}",
            t.param_value,
            t.algorithm,
            t.trial + 1
        );
    })?;
    bench::emit_report(&report, &args.output_dir)?;
    let failed = report.trials.iter().filter(|t| !t.succeeded()).count();
    eprintln!(
        "wrote {} trials ({failed} failed) to {}",
        report.trials.len(),
        args.output_dir.display()
    );
    let disagreements = report.disagreements();
    if !disagreements.is_empty() {
        eprintln!("itemset counts disagree at {param} = {disagreements:?}");
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let sigma = parse_min_support(&args.min_support)?;
    let options = args.miner.options()?;
    let faulty: Option<Algorithm> = args.inject_fault.as_deref().map(str::parse).transpose()?;
    let db = load(&args.input)?;
    let report = verify::verify(
        &db,
        &sigma,
        args.against_naive,
        &options,
        |algorithm, result| {
            if Some(algorithm) == faulty {
                drop_last_entry(result)
            } else {
                result
            }
        },
    )?;
    let mut out = io::stdout().lock();
    if report.agrees() {
        let count = report.results.first().map_or(0, |(_, r)| r.len());
        let names: Vec<&str> = report.results.iter().map(|(a, _)| a.name()).collect();
        writeln!(out, "ok: {} agree on {count} itemsets", names.join(", "))?;
        return Ok(());
    }
    for m in &report.mismatches {
        writeln!(out, "mismatch: {} vs {}", m.reference, m.other)?;
        for line in &m.diff {
            writeln!(out, "  {line}")?;
        }
    }
    Err(Failure::Mismatch)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Mine(a) => cmd_mine(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(3),
        Err(Failure::Error(e)) => {
            eprintln!("fim: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

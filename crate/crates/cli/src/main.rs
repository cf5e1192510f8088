//! `splitqa`: split-and-rephrase simplification of SQuAD-style corpora.

mod config;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use splitqa_annotate::{Store, TaskKind};
use splitqa_core::analysis::SampledPair;
use splitqa_core::metrics::MetricReport;
use splitqa_core::pipeline::{self, read_jsonl, PipelineConfig, Stage};

use config::{FileConfig, PipelineArgs, ServeArgs, CONFIG_KEYS_HELP};

#[derive(Parser)]
#[command(name = "splitqa", version, about, long_about = None)]
#[command(after_long_help = CONFIG_KEYS_HELP)]
struct Cli {
    /// Only print warnings and errors on stderr.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    quiet: bool,
    /// Print debug logging on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split every context into sentences (sentences.jsonl).
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Segment(PipelineArgs),
    /// Send sentences to the backend (transfer.jsonl); resumes a partial run.
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Simplify(PipelineArgs),
    /// Score candidates and apply the quality gates (thresholded.jsonl, stage_stats.json).
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Threshold(PipelineArgs),
    /// BLEU, SARI and FKGL for accepted pairs (metrics.jsonl, metric_report.json).
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Evaluate(PipelineArgs),
    /// Rebuild contexts and recover answer offsets (simple.json, original.json, drops.jsonl).
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Reconstruct(PipelineArgs),
    /// Length-bucket analysis and the rating sample (transfer_analysis.*, sample.jsonl).
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Analyze(PipelineArgs),
    /// All six stages in order.
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Run(PipelineArgs),
    /// Human evaluation service.
    #[command(subcommand)]
    Annotate(AnnotateCommand),
    /// Score tab-separated rows: original, transferred, optional references
    /// joined by `|||`. Writes one JSON object per row.
    Score(ScoreArgs),
}

#[derive(Subcommand)]
enum AnnotateCommand {
    /// Serve the rating API and UI.
    #[command(after_long_help = CONFIG_KEYS_HELP)]
    Serve(ServeArgs),
    /// Create a task from a sample file (one {pair_id, original, candidate} per line).
    CreateTask(CreateTaskArgs),
}

#[derive(Args)]
struct CreateTaskArgs {
    /// Sample produced by `analyze` (sample.jsonl).
    #[arg(long)]
    sample: PathBuf,
    /// quality_rating or edit_classification.
    #[arg(long, default_value = "quality_rating")]
    kind: String,
    #[command(flatten)]
    serve: ServeArgs,
}

#[derive(Args)]
struct ScoreArgs {
    /// TSV input; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSON lines output; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet {
        "warn"
    } else if cli.verbose {
        "debug"
    } else {
        "info"
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .format_target(false)
        .init();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Segment(args) => stage(args, Stage::Segment),
        Command::Simplify(args) => stage(args, Stage::Simplify),
        Command::Threshold(args) => stage(args, Stage::Threshold),
        Command::Evaluate(args) => stage(args, Stage::Evaluate),
        Command::Reconstruct(args) => stage(args, Stage::Reconstruct),
        Command::Analyze(args) => stage(args, Stage::Analyze),
        Command::Run(args) => {
            let config = pipeline_config(&args, true)?;
            for s in Stage::ALL {
                run_and_report(&config, s)?;
            }
            println!("artifacts in {}", config.out_dir.display());
            Ok(())
        }
        Command::Annotate(AnnotateCommand::Serve(args)) => {
            let file = FileConfig::load(args.config.as_deref())?;
            let (listen, data_dir, ui_dir) = args.resolve(&file)?;
            splitqa_annotate::serve(&listen, data_dir.clone(), ui_dir)
                .with_context(|| format!("annotation service (data dir {})", data_dir.display()))
        }
        Command::Annotate(AnnotateCommand::CreateTask(args)) => create_task(args),
        Command::Score(args) => score(args),
    }
}

fn pipeline_config(args: &PipelineArgs, needs_input: bool) -> Result<PipelineConfig> {
    let file = FileConfig::load(args.config.as_deref())?;
    let config = args.resolve(&file, needs_input)?;
    config.validate()?;
    Ok(config)
}

fn stage(args: PipelineArgs, stage: Stage) -> Result<()> {
    let needs_input = matches!(stage, Stage::Segment | Stage::Reconstruct);
    let config = pipeline_config(&args, needs_input)?;
    run_and_report(&config, stage)
}

/// Runs one stage and prints its summary on stdout.
fn run_and_report(config: &PipelineConfig, stage: Stage) -> Result<()> {
    match stage {
        Stage::Segment => {
            let spans = pipeline::run_segment(config)?;
            println!("segment: {} sentences", spans.len());
        }
        Stage::Simplify => {
            let records = pipeline::run_simplify(config)?;
            let failed = records.iter().filter(|r| r.is_rejected()).count();
            println!("simplify: {} records, {failed} backend failures", records.len());
        }
        Stage::Threshold => {
            let (_, stats) = pipeline::run_threshold(config)?;
            println!("{stats}");
        }
        Stage::Evaluate => {
            let (_, report) = pipeline::run_evaluate(config)?;
            print!("{}", metric_table(&report));
        }
        Stage::Reconstruct => {
            let s = pipeline::run_reconstruct(config)?;
            println!(
                "reconstruct: kept {} of {} questions, dropped {}",
                s.questions_kept, s.questions_in, s.dropped
            );
        }
        Stage::Analyze => {
            let analysis = pipeline::run_analyze(config)?;
            print!("{}", analysis.to_table());
        }
    }
    Ok(())
}

fn metric_table(report: &MetricReport) -> String {
    let mut out = format!("evaluate: {} accepted pairs\n", report.n);
    for (name, summary) in report.rows() {
        match summary {
            Some(s) => out.push_str(&format!("  {name:<17} {:>9.3} ± {:.3}\n", s.mean, s.std)),
            None => out.push_str(&format!("  {name:<17} {:>9}\n", "n/a")),
        }
    }
    out
}

fn create_task(args: CreateTaskArgs) -> Result<()> {
    let kind: TaskKind = args.kind.parse().map_err(anyhow::Error::msg)?;
    let file = FileConfig::load(args.serve.config.as_deref())?;
    let (_, data_dir, _) = args.serve.resolve(&file)?;
    let pairs: Vec<SampledPair> = read_jsonl(&args.sample)?;
    let store = Arc::new(Store::open(&data_dir)?);
    let (task, created) = store.create_task(kind, pairs)?;
    if created {
        info!("created {} task with {} pairs", task.kind, task.pairs.len());
    } else {
        info!("task already exists");
    }
    println!("{}", task.task_id);
    Ok(())
}

fn score(args: ScoreArgs) -> Result<()> {
    let reader: Box<dyn io::BufRead> = match &args.input {
        Some(path) => {
            if !path.exists() {
                bail!("input `{}` does not exist", path.display());
            }
            let file = File::open(path).with_context(|| path.display().to_string())?;
            Box::new(BufReader::new(file))
        }
        None => Box::new(io::stdin().lock()),
    };
    let writer: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| path.display().to_string())?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let errors = pipeline::score_tsv(reader, writer)?;
    if errors > 0 {
        warn!("{errors} rows could not be scored");
    }
    Ok(())
}

//! Stage runner. Each stage reads its inputs from the output directory and
//! persists its results there, so stages can be rerun one at a time and an
//! interrupted transfer resumes where it stopped.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::{info, warn};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{analyze_transfer, sample_pairs, AnalysisError, TieRule};
use crate::backend::{Http, Subprocess, Transport, TransportError, PERPLEXITY_ENDPOINT, SIMPLIFY_ENDPOINT};
use crate::corpus::{emit_corpus, load_corpus, validate_offsets, Corpus, CorpusError};
use crate::lm::{stub_scorer, STUB_SCORER};
use crate::metrics::{score_pair, sari, MetricReport, RecordScores, DEFAULT_MAX_N};
use crate::reconstruct::{finalize_datasets, rebuild_corpus, ReconstructError};
use crate::segment::{parse_abbreviations, tokenize_words, SentenceSpan, Segmenter};
use crate::simplify::{simplify_batch_with, BuiltinBackend};
use crate::text::round_sig6;
use crate::threshold::{score_records, threshold_scored, ConfigError, GateConfig};
use crate::transfer::{Status, TransferRecord};

pub const SENTENCES: &str = "sentences.jsonl";
pub const TRANSFER: &str = "transfer.jsonl";
pub const THRESHOLDED: &str = "thresholded.jsonl";
pub const STAGE_STATS: &str = "stage_stats.json";
pub const METRICS: &str = "metrics.jsonl";
pub const METRIC_REPORT: &str = "metric_report.json";
pub const REBUILT: &str = "rebuilt.jsonl";
pub const SIMPLE: &str = "simple.json";
pub const ORIGINAL: &str = "original.json";
pub const DROPS: &str = "drops.jsonl";
pub const ANALYSIS: &str = "transfer_analysis.json";
pub const ANALYSIS_TABLE: &str = "transfer_analysis.txt";
pub const SAMPLE: &str = "sample.jsonl";
pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input corpus `{}` does not exist", .0.display())]
    MissingInput(PathBuf),
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {message}", .path.display())]
    Json { path: PathBuf, line: usize, message: String },
    #[error("{}: {source}", .path.display())]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("transport failure: {0}")]
    Transport(#[from] TransportError),
    #[error("{stage} stage is incomplete: {detail}")]
    Incomplete { stage: Stage, detail: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Gates(#[from] ConfigError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Segment,
    Simplify,
    Threshold,
    Evaluate,
    Reconstruct,
    Analyze,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Segment,
        Stage::Simplify,
        Stage::Threshold,
        Stage::Evaluate,
        Stage::Reconstruct,
        Stage::Analyze,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Segment => "segment",
            Stage::Simplify => "simplify",
            Stage::Threshold => "threshold",
            Stage::Evaluate => "evaluate",
            Stage::Reconstruct => "reconstruct",
            Stage::Analyze => "analyze",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Where candidates come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendSpec {
    Builtin(BuiltinBackend),
    Http(String),
    Command(String),
}

impl FromStr for BackendSpec {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "builtin:identity" => Ok(BackendSpec::Builtin(BuiltinBackend::Identity)),
            "builtin:rule_split" => Ok(BackendSpec::Builtin(BuiltinBackend::RuleSplit)),
            _ if s.starts_with("builtin:") => Err(PipelineError::Config(format!(
                "unknown backend `{s}` (builtins: builtin:identity, builtin:rule_split)"
            ))),
            _ if s.starts_with("http://") || s.starts_with("https://") => Ok(BackendSpec::Http(s.to_string())),
            "" => Err(PipelineError::Config("empty backend spec".into())),
            _ => Ok(BackendSpec::Command(s.to_string())),
        }
    }
}

impl std::fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BackendSpec::Builtin(b) => f.write_str(b.name()),
            BackendSpec::Http(url) | BackendSpec::Command(url) => f.write_str(url),
        }
    }
}

impl BackendSpec {
    pub fn connect(&self, in_flight: usize) -> Result<Box<dyn Transport>> {
        Ok(match self {
            BackendSpec::Builtin(b) => Box::new(b.transport()),
            BackendSpec::Http(url) => Box::new(Http::new(url, SIMPLIFY_ENDPOINT, in_flight)),
            BackendSpec::Command(cmd) => Box::new(Subprocess::spawn(cmd)?),
        })
    }
}

/// Where perplexities come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScorerSpec {
    Stub,
    Http(String),
    Command(String),
}

impl FromStr for ScorerSpec {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            STUB_SCORER => Ok(ScorerSpec::Stub),
            _ if s.starts_with("builtin:") => Err(PipelineError::Config(format!(
                "unknown scorer `{s}` (builtin: {STUB_SCORER})"
            ))),
            _ if s.starts_with("http://") || s.starts_with("https://") => Ok(ScorerSpec::Http(s.to_string())),
            "" => Err(PipelineError::Config("empty scorer spec".into())),
            _ => Ok(ScorerSpec::Command(s.to_string())),
        }
    }
}

impl std::fmt::Display for ScorerSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScorerSpec::Stub => f.write_str(STUB_SCORER),
            ScorerSpec::Http(url) | ScorerSpec::Command(url) => f.write_str(url),
        }
    }
}

impl ScorerSpec {
    pub fn connect(&self, in_flight: usize) -> Result<Box<dyn Transport>> {
        Ok(match self {
            ScorerSpec::Stub => Box::new(stub_scorer()),
            ScorerSpec::Http(url) => Box::new(Http::new(url, PERPLEXITY_ENDPOINT, in_flight)),
            ScorerSpec::Command(cmd) => Box::new(Subprocess::spawn(cmd)?),
        })
    }
}

pub const DEFAULT_SEED: u64 = 13;
pub const DEFAULT_SAMPLE_SIZE: usize = 50;
pub const DEFAULT_IN_FLIGHT: usize = 8;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub out_dir: PathBuf,
    /// Extra abbreviation entries added to the built-in list.
    pub abbreviations: Option<PathBuf>,
    pub backend: BackendSpec,
    pub scorer: ScorerSpec,
    pub gates: GateConfig,
    pub seed: u64,
    pub sample_size: usize,
    pub in_flight: usize,
    pub tie_rule: TieRule,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            input: input.into(),
            out_dir: out_dir.into(),
            abbreviations: None,
            backend: BackendSpec::Builtin(BuiltinBackend::RuleSplit),
            scorer: ScorerSpec::Stub,
            gates: GateConfig::default(),
            seed: DEFAULT_SEED,
            sample_size: DEFAULT_SAMPLE_SIZE,
            in_flight: DEFAULT_IN_FLIGHT,
            tie_rule: TieRule::Higher,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.validate()?;
        if self.in_flight == 0 {
            return Err(PipelineError::Config("in_flight must be at least 1".into()));
        }
        if let Some(path) = &self.abbreviations {
            if !path.is_file() {
                return Err(PipelineError::Config(format!(
                    "abbreviation list `{}` does not exist",
                    path.display()
                )));
            }
        }
        Ok(())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

// Artifact I/O.

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("artifact serializes");
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

pub fn write_jsonl<'a, T: Serialize + 'a>(path: &Path, rows: impl IntoIterator<Item = &'a T>) -> Result<()> {
    let mut bytes = Vec::new();
    for row in rows {
        serde_json::to_writer(&mut bytes, row).expect("row serializes");
        bytes.push(b'\n');
    }
    write_atomic(path, &bytes)
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(serde_json::from_str(&line).map_err(|e| PipelineError::Json {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(rows)
}

/// Complete newline-terminated rows from the start of a file that may have
/// been cut off mid-write.
fn read_jsonl_prefix<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(path)(e)),
    };
    let mut rows = Vec::new();
    for line in bytes.split_inclusive(|&b| b == b'\n') {
        let Some(line) = line.strip_suffix(b"\n") else { break };
        match serde_json::from_slice(line) {
            Ok(row) => rows.push(row),
            Err(_) => break,
        }
    }
    Ok(rows)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    serde_json::from_slice(&bytes).map_err(|e| PipelineError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}

pub fn load_input(path: &Path) -> Result<Corpus> {
    if !path.exists() {
        return Err(PipelineError::MissingInput(path.to_path_buf()));
    }
    let file = File::open(path).map_err(io_err(path))?;
    load_corpus(BufReader::new(file)).map_err(|source| PipelineError::Corpus {
        path: path.to_path_buf(),
        source,
    })
}

fn write_corpus(path: &Path, corpus: &Corpus) -> Result<()> {
    let mut bytes = Vec::new();
    emit_corpus(corpus, &mut bytes).map_err(|source| PipelineError::Corpus {
        path: path.to_path_buf(),
        source,
    })?;
    write_atomic(path, &bytes)
}

// Manifest.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pending,
    Incomplete,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub backend: String,
    pub scorer: String,
    pub gates: GateConfig,
    pub seed: u64,
    pub sample_size: usize,
    /// Backend that produced the persisted transfer records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer_backend: Option<String>,
    pub stages: BTreeMap<Stage, StageStatus>,
}

impl Manifest {
    fn load_or_new(config: &PipelineConfig) -> Manifest {
        let mut manifest = read_json::<Manifest>(&config.path(MANIFEST)).unwrap_or_else(|_| Manifest {
            backend: String::new(),
            scorer: String::new(),
            gates: config.gates,
            seed: config.seed,
            sample_size: config.sample_size,
            transfer_backend: None,
            stages: Stage::ALL.iter().map(|&s| (s, StageStatus::Pending)).collect(),
        });
        manifest.backend = config.backend.to_string();
        manifest.scorer = config.scorer.to_string();
        manifest.gates = config.gates;
        manifest.seed = config.seed;
        manifest.sample_size = config.sample_size;
        manifest
    }

    pub fn load(out_dir: &Path) -> Result<Manifest> {
        read_json(&out_dir.join(MANIFEST))
    }
}

fn mark(config: &PipelineConfig, stage: Stage, status: StageStatus) -> Result<()> {
    let mut manifest = Manifest::load_or_new(config);
    manifest.stages.insert(stage, status);
    if status != StageStatus::Complete {
        // Everything downstream depends on this stage's output.
        for later in Stage::ALL.iter().filter(|&&s| s > stage) {
            manifest.stages.insert(*later, StageStatus::Pending);
        }
    }
    write_json(&config.path(MANIFEST), &manifest)
}

fn tracked<T>(config: &PipelineConfig, stage: Stage, body: impl FnOnce() -> Result<T>) -> Result<T> {
    fs::create_dir_all(&config.out_dir).map_err(io_err(&config.out_dir))?;
    mark(config, stage, StageStatus::Incomplete)?;
    let value = body()?;
    mark(config, stage, StageStatus::Complete)?;
    info!("{stage}: complete");
    Ok(value)
}

// Stages.

pub fn run_segment(config: &PipelineConfig) -> Result<Vec<SentenceSpan>> {
    config.validate()?;
    let corpus = load_input(&config.input)?;
    tracked(config, Stage::Segment, || {
        let mut segmenter = Segmenter::default();
        if let Some(path) = &config.abbreviations {
            let list = fs::read_to_string(path).map_err(io_err(path))?;
            segmenter.extend(parse_abbreviations(&list));
        }
        let spans: Vec<SentenceSpan> = corpus.contexts().flat_map(|c| segmenter.segment_context(c)).collect();
        write_jsonl(&config.path(SENTENCES), &spans)?;
        info!("segment: {} sentences from {} contexts", spans.len(), corpus.contexts().count());
        Ok(spans)
    })
}

fn same_sentence(record: &TransferRecord, span: &SentenceSpan) -> bool {
    record.context_id == span.context_id && record.sentence_index == span.index && record.original == span.text
}

/// Sends every sentence without a persisted result to the backend. Results
/// are appended to the transfer file in input order as they become
/// contiguous; on a lost connection the unanswered tail is left out so a
/// rerun picks it up.
pub fn run_simplify(config: &PipelineConfig) -> Result<Vec<TransferRecord>> {
    config.validate()?;
    let spans: Vec<SentenceSpan> = read_jsonl(&config.path(SENTENCES))?;
    let backend = config.backend.to_string();
    let previous_backend = Manifest::load(&config.out_dir).ok().and_then(|m| m.transfer_backend);
    tracked(config, Stage::Simplify, || {
        let path = config.path(TRANSFER);
        let mut records: Vec<TransferRecord> = spans.iter().map(TransferRecord::from_span).collect();
        let mut done: Vec<TransferRecord> = read_jsonl_prefix(&path)?;
        let consistent = done.len() <= spans.len() && done.iter().zip(&spans).all(|(r, s)| same_sentence(r, s));
        if !consistent {
            warn!("simplify: {} does not match the current sentences; starting over", path.display());
            done.clear();
        } else if previous_backend.as_deref().is_some_and(|b| b != backend) && !done.is_empty() {
            warn!("simplify: {} came from another backend; starting over", path.display());
            done.clear();
        }
        let mut manifest = Manifest::load_or_new(config);
        manifest.transfer_backend = Some(backend.clone());
        write_json(&config.path(MANIFEST), &manifest)?;
        let resumed = done.len();
        if resumed > 0 {
            info!("simplify: resuming after {resumed} persisted records");
        }
        for (slot, record) in records.iter_mut().zip(done) {
            *slot = record;
        }

        // Rewrite the valid prefix, dropping any partial trailing line.
        let mut prefix = Vec::new();
        for record in &records[..resumed] {
            serde_json::to_writer(&mut prefix, record).expect("record serializes");
            prefix.push(b'\n');
        }
        fs::write(&path, &prefix).map_err(io_err(&path))?;
        let file = OpenOptions::new().append(true).open(&path).map_err(io_err(&path))?;
        let mut out = BufWriter::new(file);

        let mut transport = config.backend.connect(config.in_flight)?;
        let total = records.len();
        let mut buffered: BTreeMap<usize, TransferRecord> = BTreeMap::new();
        let mut next = 0;
        let mut write_error = None;
        let outcome = simplify_batch_with(&mut records[resumed..], transport.as_mut(), config.in_flight, |i, record| {
            buffered.insert(i, record.clone());
            while let Some(ready) = buffered.remove(&next) {
                let line = serde_json::to_string(&ready).expect("record serializes");
                let written = writeln!(out, "{line}").and_then(|_| out.flush());
                if let Err(e) = written {
                    write_error.get_or_insert(e);
                }
                next += 1;
                if (resumed + next).is_multiple_of(500) {
                    info!("simplify: {}/{total}", resumed + next);
                }
            }
        });
        drop(transport);
        out.flush().map_err(io_err(&path))?;
        if let Some(e) = write_error {
            return Err(io_err(&path)(e));
        }
        if let Some(err) = outcome.interrupted {
            return Err(PipelineError::Incomplete {
                stage: Stage::Simplify,
                detail: format!("{err}; {} of {total} records persisted, rerun to resume", resumed + next),
            });
        }
        let failures = records.iter().filter(|r| r.is_rejected()).count();
        info!("simplify: {total} records, {failures} backend failures");
        Ok(records)
    })
}

fn load_transfer(config: &PipelineConfig) -> Result<Vec<TransferRecord>> {
    let sentences: Vec<SentenceSpan> = read_jsonl(&config.path(SENTENCES))?;
    let records: Vec<TransferRecord> = read_jsonl(&config.path(TRANSFER))?;
    if records.len() != sentences.len() {
        return Err(PipelineError::Incomplete {
            stage: Stage::Simplify,
            detail: format!("{} of {} sentences transferred", records.len(), sentences.len()),
        });
    }
    Ok(records)
}

pub fn run_threshold(config: &PipelineConfig) -> Result<(Vec<TransferRecord>, crate::threshold::StageStats)> {
    config.validate()?;
    let mut records = load_transfer(config)?;
    tracked(config, Stage::Threshold, || {
        let mut scorer = config.scorer.connect(config.in_flight)?;
        score_records(&mut records, scorer.as_mut(), config.in_flight)?;
        let stats = threshold_scored(&mut records, &config.gates);
        write_jsonl(&config.path(THRESHOLDED), &records)?;
        write_json(&config.path(STAGE_STATS), &stats.report())?;
        info!("threshold:\n{stats}");
        Ok((records, stats))
    })
}

fn accepted(records: &[TransferRecord]) -> Vec<TransferRecord> {
    records.iter().filter(|r| r.status == Status::Accepted).cloned().collect()
}

pub fn run_evaluate(config: &PipelineConfig) -> Result<(Vec<RecordScores>, MetricReport)> {
    config.validate()?;
    let records: Vec<TransferRecord> = read_jsonl(&config.path(THRESHOLDED))?;
    tracked(config, Stage::Evaluate, || {
        let mut scores = Vec::new();
        for record in accepted(&records) {
            match RecordScores::for_record(&record) {
                Ok(s) => scores.push(s),
                Err(e) => warn!("evaluate: skipping {}: {e}", record.pair_id()),
            }
        }
        let report = MetricReport::from_scores(&scores);
        write_jsonl(&config.path(METRICS), &scores)?;
        write_json(&config.path(METRIC_REPORT), &report)?;
        info!("evaluate: {} pairs scored", scores.len());
        Ok((scores, report))
    })
}

#[derive(Debug, Clone)]
pub struct ReconstructSummary {
    pub questions_in: usize,
    pub questions_kept: usize,
    pub dropped: usize,
}

pub fn run_reconstruct(config: &PipelineConfig) -> Result<ReconstructSummary> {
    config.validate()?;
    let corpus = load_input(&config.input)?;
    let spans: Vec<SentenceSpan> = read_jsonl(&config.path(SENTENCES))?;
    let records: Vec<TransferRecord> = read_jsonl(&config.path(THRESHOLDED))?;
    tracked(config, Stage::Reconstruct, || {
        let rebuilt = rebuild_corpus(&corpus, &spans, &records)?;
        let out = finalize_datasets(&corpus, &rebuilt)?;
        for (name, dataset) in [(SIMPLE, &out.simple), (ORIGINAL, &out.original_paired)] {
            let report = validate_offsets(dataset);
            if !report.is_ok() {
                return Err(PipelineError::Config(format!(
                    "{name}: {} answers failed offset validation",
                    report.failures.len()
                )));
            }
        }
        write_jsonl(&config.path(REBUILT), &rebuilt)?;
        write_corpus(&config.path(SIMPLE), &out.simple)?;
        write_corpus(&config.path(ORIGINAL), &out.original_paired)?;
        write_jsonl(&config.path(DROPS), &out.drops)?;
        let summary = ReconstructSummary {
            questions_in: corpus.question_count(),
            questions_kept: out.simple.question_count(),
            dropped: out.drops.len(),
        };
        info!(
            "reconstruct: kept {} of {} questions, dropped {}",
            summary.questions_kept, summary.questions_in, summary.dropped
        );
        Ok(summary)
    })
}

pub fn run_analyze(config: &PipelineConfig) -> Result<crate::analysis::TransferAnalysis> {
    config.validate()?;
    let scores: Vec<RecordScores> = read_jsonl(&config.path(METRICS))?;
    let records: Vec<TransferRecord> = read_jsonl(&config.path(THRESHOLDED))?;
    tracked(config, Stage::Analyze, || {
        let analysis = analyze_transfer(&scores, config.tie_rule)?;
        write_json(&config.path(ANALYSIS), &analysis)?;
        write_atomic(&config.path(ANALYSIS_TABLE), analysis.to_table().as_bytes())?;
        let pool = accepted(&records);
        let n = config.sample_size.min(pool.len());
        if n < config.sample_size {
            warn!("analyze: only {} accepted pairs, sampling {n} instead of {}", pool.len(), config.sample_size);
        }
        let sample = sample_pairs(&pool, n, config.seed)?;
        write_jsonl(&config.path(SAMPLE), &sample)?;
        Ok(analysis)
    })
}

pub fn run_stage(config: &PipelineConfig, stage: Stage) -> Result<()> {
    match stage {
        Stage::Segment => run_segment(config).map(drop),
        Stage::Simplify => run_simplify(config).map(drop),
        Stage::Threshold => run_threshold(config).map(drop),
        Stage::Evaluate => run_evaluate(config).map(drop),
        Stage::Reconstruct => run_reconstruct(config).map(drop),
        Stage::Analyze => run_analyze(config).map(drop),
    }
}

/// All stages in order. A transfer file left by an interrupted run is
/// resumed, not recomputed.
pub fn run_pipeline(config: &PipelineConfig) -> Result<()> {
    config.validate()?;
    if !config.input.exists() {
        return Err(PipelineError::MissingInput(config.input.clone()));
    }
    for stage in Stage::ALL {
        run_stage(config, stage)?;
    }
    Ok(())
}

// Scoring mode for tab-separated (original, transferred, references) rows.

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TsvScores {
    pub line: usize,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub bleu: f64,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub sari: f64,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub fkgl_original: f64,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub fkgl_transferred: f64,
}

pub const REFERENCE_SEPARATOR: &str = "|||";

/// Scores one row. References default to the original sentence.
pub fn score_tsv_row(line_number: usize, row: &str) -> Result<TsvScores, String> {
    let mut fields = row.split('\t');
    let original = fields.next().unwrap_or_default();
    let transferred = fields.next().ok_or("expected at least two tab-separated fields")?;
    let base = score_pair("", original, transferred).map_err(|e| e.to_string())?;
    let sari_value = match fields.next().filter(|f| !f.trim().is_empty()) {
        None => base.sari,
        Some(refs) => {
            let tokens = |s: &str| -> Vec<String> { tokenize_words(s).into_iter().map(|t| t.text).collect() };
            let references: Vec<Vec<String>> = refs.split(REFERENCE_SEPARATOR).map(|r| tokens(r.trim())).collect();
            round_sig6(
                sari(&tokens(original), &tokens(transferred), &references, DEFAULT_MAX_N).map_err(|e| e.to_string())?,
            )
        }
    };
    Ok(TsvScores {
        line: line_number,
        bleu: base.bleu,
        sari: sari_value,
        fkgl_original: base.fkgl_original,
        fkgl_transferred: base.fkgl_transferred,
    })
}

/// Reads rows and writes one JSON object per row; rows that cannot be
/// scored produce `{"line", "error"}`. Returns the number of error rows.
pub fn score_tsv<R: BufRead, W: Write>(reader: R, mut writer: W) -> std::io::Result<usize> {
    let mut errors = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = match score_tsv_row(i + 1, &line) {
            Ok(scores) => serde_json::to_string(&scores).expect("scores serialize"),
            Err(error) => {
                errors += 1;
                serde_json::json!({ "line": i + 1, "error": error }).to_string()
            }
        };
        writeln!(writer, "{row}")?;
    }
    Ok(errors)
}

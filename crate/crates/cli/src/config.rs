//! Config file plus flag overrides. A flag beats the file, the file beats
//! the built-in default.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;
use splitqa_core::analysis::TieRule;
use splitqa_core::pipeline::{BackendSpec, PipelineConfig, ScorerSpec};

pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";
pub const DEFAULT_DATA_DIR: &str = "annotations";

pub const CONFIG_KEYS_HELP: &str = "\
CONFIG FILE (--config, TOML key = value; flags override file values;
relative paths are resolved against the file's directory):
  input            SQuAD-format corpus to simplify            (--input)
  out_dir          directory for all artifacts                 (--out-dir)       [out]
  abbreviations    extra abbreviation list, one per line       (--abbreviations)
  backend          builtin:rule_split | builtin:identity | http(s)://URL | shell command
                                                               (--backend)       [builtin:rule_split]
  scorer           builtin:stub | http(s)://URL | shell command (--scorer)       [builtin:stub]
  ppl_low          lowest accepted perplexity, inclusive       (--ppl-low)       [50]
  ppl_high         highest accepted perplexity, inclusive      (--ppl-high)      [600]
  min_words        minimum words in the original sentence      (--min-words)     [5]
  enforce_numeric  reject candidates that lose a number        (--no-numeric-gate) [true]
  seed             seed for the rating sample                  (--seed)          [13]
  sample_size      pairs in the rating sample                  (--sample-size)   [50]
  in_flight        maximum outstanding backend requests        (--in-flight)     [8]
  tie_rule         bucket side for lengths equal to a cut: higher | lower
                                                               (--tie-rule)      [higher]
  listen           annotation service address                  (--listen)        [127.0.0.1:8080]
  data_dir         annotation service storage                  (--data-dir)      [annotations]
  ui_dir           static UI files; bundled page if unset      (--ui-dir)
";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub backend: Option<String>,
    pub scorer: Option<String>,
    pub ppl_low: Option<f64>,
    pub ppl_high: Option<f64>,
    pub min_words: Option<usize>,
    pub enforce_numeric: Option<bool>,
    pub seed: Option<u64>,
    pub sample_size: Option<usize>,
    pub in_flight: Option<usize>,
    pub tie_rule: Option<String>,
    pub listen: Option<String>,
    pub data_dir: Option<PathBuf>,
    pub ui_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path).with_context(|| format!("config file `{}`", path.display()))?;
        let mut config: FileConfig =
            toml::from_str(&text).with_context(|| format!("config file `{}`", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut config.input,
            &mut config.out_dir,
            &mut config.abbreviations,
            &mut config.data_dir,
            &mut config.ui_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// TOML config file; see the key list below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// SQuAD-format input corpus.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Artifact directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Extra abbreviations, one per line, added to the built-in list.
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
    /// builtin:rule_split, builtin:identity, an http(s) URL, or a shell command.
    #[arg(long)]
    pub backend: Option<String>,
    /// builtin:stub, an http(s) URL, or a shell command.
    #[arg(long)]
    pub scorer: Option<String>,
    #[arg(long)]
    pub ppl_low: Option<f64>,
    #[arg(long)]
    pub ppl_high: Option<f64>,
    /// Minimum words in the original sentence.
    #[arg(long)]
    pub min_words: Option<usize>,
    /// Keep candidates that drop a numeric token.
    #[arg(long)]
    pub no_numeric_gate: bool,
    /// Seed for the rating sample.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub sample_size: Option<usize>,
    /// Maximum outstanding backend requests.
    #[arg(long)]
    pub in_flight: Option<usize>,
    /// higher or lower.
    #[arg(long)]
    pub tie_rule: Option<String>,
}

impl PipelineArgs {
    pub fn resolve(&self, file: &FileConfig, needs_input: bool) -> Result<PipelineConfig> {
        let input = self.input.clone().or_else(|| file.input.clone());
        if needs_input && input.is_none() {
            bail!("no input corpus: pass --input or set `input` in the config file");
        }
        let out_dir = self
            .out_dir
            .clone()
            .or_else(|| file.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        let mut config = PipelineConfig::new(input.unwrap_or_default(), out_dir);
        config.abbreviations = self.abbreviations.clone().or_else(|| file.abbreviations.clone());
        if let Some(spec) = self.backend.as_ref().or(file.backend.as_ref()) {
            config.backend = spec.parse::<BackendSpec>()?;
        }
        if let Some(spec) = self.scorer.as_ref().or(file.scorer.as_ref()) {
            config.scorer = spec.parse::<ScorerSpec>()?;
        }
        let gates = &mut config.gates;
        if let Some(v) = self.ppl_low.or(file.ppl_low) {
            gates.perplexity_low = v;
        }
        if let Some(v) = self.ppl_high.or(file.ppl_high) {
            gates.perplexity_high = v;
        }
        if let Some(v) = self.min_words.or(file.min_words) {
            gates.min_original_words = v;
        }
        if self.no_numeric_gate {
            gates.enforce_numeric = false;
        } else if let Some(v) = file.enforce_numeric {
            gates.enforce_numeric = v;
        }
        if let Some(v) = self.seed.or(file.seed) {
            config.seed = v;
        }
        if let Some(v) = self.sample_size.or(file.sample_size) {
            config.sample_size = v;
        }
        if let Some(v) = self.in_flight.or(file.in_flight) {
            config.in_flight = v;
        }
        if let Some(rule) = self.tie_rule.as_ref().or(file.tie_rule.as_ref()) {
            config.tie_rule = rule.parse::<TieRule>().map_err(anyhow::Error::msg)?;
        }
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// TOML config file; see the key list below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Address to listen on, e.g. 127.0.0.1:8080.
    #[arg(long)]
    pub listen: Option<String>,
    /// Directory holding tasks and rating logs.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Serve the UI from this directory instead of the bundled page.
    #[arg(long)]
    pub ui_dir: Option<PathBuf>,
}

impl ServeArgs {
    pub fn resolve(&self, file: &FileConfig) -> Result<(String, PathBuf, Option<PathBuf>)> {
        let listen = self
            .listen
            .clone()
            .or_else(|| file.listen.clone())
            .unwrap_or_else(|| DEFAULT_LISTEN.to_string());
        let data_dir = self
            .data_dir
            .clone()
            .or_else(|| file.data_dir.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR));
        let ui_dir = self.ui_dir.clone().or_else(|| file.ui_dir.clone());
        if let Some(dir) = &ui_dir {
            if !dir.is_dir() {
                bail!("UI directory `{}` does not exist", dir.display());
            }
        }
        Ok((listen, data_dir, ui_dir))
    }
}

//! The quality funnel: perplexity range, original length, redundancy, and
//! numeric preservation, with per-stage survivor accounting.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::{exchange, ScoreReply, Transport, TransportError, WireRequest};
use crate::simplify::check_numeric_preservation;
use crate::text::round_sig6;
use crate::transfer::{RejectReason, Status, TransferRecord};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("perplexity_low ({low}) must be below perplexity_high ({high})")]
    PerplexityBounds { low: f64, high: f64 },
    #[error("min_original_words must be at least 1")]
    MinWords,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateConfig {
    pub perplexity_low: f64,
    pub perplexity_high: f64,
    pub min_original_words: usize,
    pub enforce_numeric: bool,
}

impl Default for GateConfig {
    fn default() -> Self {
        GateConfig {
            perplexity_low: 50.0,
            perplexity_high: 600.0,
            min_original_words: 5,
            enforce_numeric: true,
        }
    }
}

impl GateConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        // Also rejects NaN bounds.
        if self.perplexity_low.partial_cmp(&self.perplexity_high) != Some(std::cmp::Ordering::Less) {
            return Err(ConfigError::PerplexityBounds {
                low: self.perplexity_low,
                high: self.perplexity_high,
            });
        }
        if self.min_original_words < 1 {
            return Err(ConfigError::MinWords);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Perplexity,
    Length,
    Redundancy,
    Numeric,
}

impl Gate {
    pub const DEFAULT_ORDER: [Gate; 4] = [Gate::Perplexity, Gate::Length, Gate::Redundancy, Gate::Numeric];

    pub fn reason(self) -> RejectReason {
        match self {
            Gate::Perplexity => RejectReason::PerplexityOutOfRange,
            Gate::Length => RejectReason::OriginalTooShort,
            Gate::Redundancy => RejectReason::Redundant,
            Gate::Numeric => RejectReason::NumericLoss,
        }
    }

    /// Whether `record` passes this gate. A record without the data the gate
    /// inspects (no perplexity, no candidate) fails it.
    pub fn passes(self, record: &TransferRecord, config: &GateConfig) -> bool {
        match self {
            Gate::Perplexity => record
                .perplexity
                .is_some_and(|p| perplexity_in_range(p, config)),
            Gate::Length => record.original_word_count >= config.min_original_words,
            Gate::Redundancy => record.candidate.as_deref().is_some_and(|c| !is_redundant(c)),
            Gate::Numeric => {
                !config.enforce_numeric
                    || record
                        .candidate
                        .as_deref()
                        .is_some_and(|c| check_numeric_preservation(&record.original, c).passed())
            }
        }
    }
}

/// Both bounds are inclusive.
pub fn perplexity_in_range(perplexity: f64, config: &GateConfig) -> bool {
    config.perplexity_low <= perplexity && perplexity <= config.perplexity_high
}

/// True when two candidate sentences are identical after trimming.
pub fn is_redundant<S: AsRef<str>>(candidate: &[S]) -> bool {
    let mut seen = HashSet::new();
    candidate.iter().any(|s| !seen.insert(s.as_ref().trim()))
}

/// Length gate on its own: `Ok` or the rejection it would cause.
pub fn gate_original_length(record: &TransferRecord, config: &GateConfig) -> Result<(), RejectReason> {
    gate_result(Gate::Length, record, config)
}

pub fn gate_redundancy(record: &TransferRecord) -> Result<(), RejectReason> {
    gate_result(Gate::Redundancy, record, &GateConfig::default())
}

fn gate_result(gate: Gate, record: &TransferRecord, config: &GateConfig) -> Result<(), RejectReason> {
    if gate.passes(record, config) {
        Ok(())
    } else {
        Err(gate.reason())
    }
}

/// Whether the record takes part in gating: it has a candidate and did not
/// fail in transfer or scoring.
fn gateable(record: &TransferRecord) -> bool {
    record.candidate.is_some() && record.status != Status::Rejected(RejectReason::BackendFailure)
}

/// Scores every candidate that has no perplexity yet. Scorer errors reject
/// the record with `backend_failure`; a lost connection fails all records
/// still waiting and is returned.
pub fn score_records(
    records: &mut [TransferRecord],
    scorer: &mut dyn Transport,
    in_flight_limit: usize,
) -> Result<(), TransportError> {
    let targets: Vec<usize> = (0..records.len())
        .filter(|&i| gateable(&records[i]) && records[i].perplexity.is_none())
        .collect();
    let requests: Vec<WireRequest> = targets
        .iter()
        .map(|&i| WireRequest {
            id: i.to_string(),
            text: records[i].joined_candidate().unwrap_or_default(),
        })
        .collect();
    let mut answered = vec![false; targets.len()];
    let result = exchange::<ScoreReply, _>(scorer, &requests, in_flight_limit, |k, reply| {
        answered[k] = true;
        let record = &mut records[targets[k]];
        match reply.valid_perplexity() {
            Ok(p) => {
                // Gate on the value that gets persisted.
                record.perplexity = Some(round_sig6(p));
                record.status = Status::Scored;
            }
            Err(e) => record.fail(format!("scorer: {e}")),
        }
    });
    if let Err(err) = &result {
        for (k, &i) in targets.iter().enumerate() {
            if !answered[k] {
                records[i].fail(format!("scorer: {err}"));
            }
        }
    }
    result
}

/// Scores one record and applies the perplexity gate to it.
pub fn gate_perplexity(
    record: &mut TransferRecord,
    scorer: &mut dyn Transport,
    config: &GateConfig,
) -> Result<(), TransportError> {
    score_records(std::slice::from_mut(record), scorer, 1)?;
    if gateable(record) {
        if Gate::Perplexity.passes(record, config) {
            record.status = Status::Scored;
        } else {
            record.reject(RejectReason::PerplexityOutOfRange);
        }
    }
    Ok(())
}

/// Applies `order` to every gateable record: the first failing gate names
/// the rejection, otherwise the record is accepted. Returns how many records
/// survive after each gate in `order`.
pub fn apply_gates(records: &mut [TransferRecord], config: &GateConfig, order: &[Gate]) -> Vec<usize> {
    let mut survivors = vec![0; order.len()];
    for record in records.iter_mut() {
        if !gateable(record) {
            continue;
        }
        let failed = order.iter().position(|gate| !gate.passes(record, config));
        let passed_stages = failed.unwrap_or(order.len());
        for count in &mut survivors[..passed_stages] {
            *count += 1;
        }
        match failed {
            Some(k) => record.reject(order[k].reason()),
            None => record.status = Status::Accepted,
        }
    }
    survivors
}

/// Survivor counts after each stage of the default gate order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageStats {
    pub input_count: usize,
    pub after_perplexity: usize,
    pub after_length: usize,
    pub after_redundancy: usize,
    pub after_numeric: usize,
}

impl StageStats {
    fn counts(&self) -> [(&'static str, usize); 4] {
        [
            ("after_perplexity", self.after_perplexity),
            ("after_length", self.after_length),
            ("after_redundancy", self.after_redundancy),
            ("after_numeric", self.after_numeric),
        ]
    }

    /// Percentage of the input surviving each stage; 0 for empty input.
    pub fn percentages(&self) -> [f64; 4] {
        self.counts().map(|(_, n)| {
            if self.input_count == 0 {
                0.0
            } else {
                crate::text::round_sig6(100.0 * n as f64 / self.input_count as f64)
            }
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.input_count >= self.after_perplexity
            && self.after_perplexity >= self.after_length
            && self.after_length >= self.after_redundancy
            && self.after_redundancy >= self.after_numeric
    }

    /// Counts with percentages of the input, in funnel order.
    pub fn report(&self) -> StageStatsReport {
        let [p1, p2, p3, p4] = self.percentages();
        StageStatsReport {
            input_count: self.input_count,
            after_perplexity: self.after_perplexity,
            after_perplexity_pct: p1,
            after_length: self.after_length,
            after_length_pct: p2,
            after_redundancy: self.after_redundancy,
            after_redundancy_pct: p3,
            after_numeric: self.after_numeric,
            after_numeric_pct: p4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageStatsReport {
    pub input_count: usize,
    pub after_perplexity: usize,
    pub after_perplexity_pct: f64,
    pub after_length: usize,
    pub after_length_pct: f64,
    pub after_redundancy: usize,
    pub after_redundancy_pct: f64,
    pub after_numeric: usize,
    pub after_numeric_pct: f64,
}

impl fmt::Display for StageStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<20} {:>10} {:>9}", "stage", "sentences", "percent")?;
        writeln!(f, "{:<20} {:>10} {:>8.2}%", "input", self.input_count, 100.0)?;
        for ((name, n), pct) in self.counts().into_iter().zip(self.percentages()) {
            writeln!(f, "{:<20} {:>10} {:>8.2}%", name, n, pct)?;
        }
        Ok(())
    }
}

/// Runs the default gate order over already-scored records in place.
pub fn threshold_scored(records: &mut [TransferRecord], config: &GateConfig) -> StageStats {
    let survivors = apply_gates(records, config, &Gate::DEFAULT_ORDER);
    StageStats {
        input_count: records.len(),
        after_perplexity: survivors[0],
        after_length: survivors[1],
        after_redundancy: survivors[2],
        after_numeric: survivors[3],
    }
}

#[derive(Debug)]
pub struct ThresholdRun {
    pub accepted: Vec<TransferRecord>,
    pub rejected: Vec<TransferRecord>,
    pub stats: StageStats,
}

/// Scores, gates and partitions `records`.
pub fn run_threshold_pipeline(
    mut records: Vec<TransferRecord>,
    scorer: &mut dyn Transport,
    config: &GateConfig,
    in_flight_limit: usize,
) -> Result<ThresholdRun, TransportError> {
    score_records(&mut records, scorer, in_flight_limit)?;
    let stats = threshold_scored(&mut records, config);
    let (accepted, rejected) = records.into_iter().partition(|r| r.status == Status::Accepted);
    Ok(ThresholdRun {
        accepted,
        rejected,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::InProcess;

    fn record(original: &str, candidate: &[&str], perplexity: f64) -> TransferRecord {
        let mut r = TransferRecord::pending("c", 0, original);
        r.candidate = Some(candidate.iter().map(|s| s.to_string()).collect());
        r.perplexity = Some(perplexity);
        r.status = Status::Scored;
        r
    }

    const LONG: &str = "The old bridge was built in 1903 by workers.";

    #[test]
    fn perplexity_bounds_are_inclusive() {
        let config = GateConfig::default();
        assert!(perplexity_in_range(100.0, &config));
        assert!(perplexity_in_range(50.0, &config));
        assert!(perplexity_in_range(600.0, &config));
        assert!(!perplexity_in_range(601.0, &config));
        assert!(!perplexity_in_range(49.999, &config));
    }

    #[test]
    fn length_gate_is_strict_below_min() {
        let config = GateConfig::default();
        let four = record("One two three four.", &["x."], 100.0);
        let five = record("One two three four five.", &["x."], 100.0);
        assert_eq!(gate_original_length(&four, &config), Err(RejectReason::OriginalTooShort));
        assert_eq!(gate_original_length(&five, &config), Ok(()));
    }

    #[test]
    fn redundancy_compares_trimmed_text_exactly() {
        assert!(is_redundant(&["He ran.", " He ran. "]));
        assert!(!is_redundant(&["He ran.", "She walked."]));
        assert!(!is_redundant(&["He ran.", "he ran."]));
        assert!(!is_redundant(&["He ran."]));
    }

    #[test]
    fn all_pass_fixture() {
        let mut records: Vec<_> = (0..10).map(|_| record(LONG, &[LONG], 100.0)).collect();
        let stats = threshold_scored(&mut records, &GateConfig::default());
        assert_eq!(
            stats,
            StageStats {
                input_count: 10,
                after_perplexity: 10,
                after_length: 10,
                after_redundancy: 10,
                after_numeric: 10
            }
        );
        assert_eq!(stats.percentages(), [100.0; 4]);
    }

    #[test]
    fn two_fail_each_stage() {
        let mut records = vec![
            record(LONG, &[LONG], 700.0),
            record(LONG, &[LONG], 10.0),
            record("Too short here.", &["Too short here."], 100.0),
            record("Short one.", &["Short one."], 100.0),
            record(LONG, &["Same.", "Same."], 100.0),
            record(LONG, &["A b.", "C d.", "A b."], 100.0),
        ];
        let stats = threshold_scored(&mut records, &GateConfig::default());
        assert_eq!(
            (stats.input_count, stats.after_perplexity, stats.after_length, stats.after_redundancy),
            (6, 4, 2, 0)
        );
        assert!(stats.is_monotone());
        let reasons: Vec<_> = records.iter().map(|r| r.status).collect();
        assert_eq!(reasons[0], Status::Rejected(RejectReason::PerplexityOutOfRange));
        assert_eq!(reasons[2], Status::Rejected(RejectReason::OriginalTooShort));
        assert_eq!(reasons[5], Status::Rejected(RejectReason::Redundant));
    }

    #[test]
    fn numeric_gate_can_be_disabled() {
        let lossy = record(LONG, &["The old bridge was built by workers."], 100.0);
        let mut strict = vec![lossy.clone()];
        let stats = threshold_scored(&mut strict, &GateConfig::default());
        assert_eq!(stats.after_numeric, 0);
        assert_eq!(strict[0].status, Status::Rejected(RejectReason::NumericLoss));
        let lenient = GateConfig {
            enforce_numeric: false,
            ..GateConfig::default()
        };
        let mut relaxed = vec![lossy];
        assert_eq!(threshold_scored(&mut relaxed, &lenient).after_numeric, 1);
    }

    #[test]
    fn backend_failures_never_survive() {
        let mut failed = TransferRecord::pending("c", 0, LONG);
        failed.fail("boom");
        let mut records = vec![failed, record(LONG, &[LONG], 100.0)];
        let stats = threshold_scored(&mut records, &GateConfig::default());
        assert_eq!((stats.input_count, stats.after_perplexity), (2, 1));
        assert_eq!(records[0].status, Status::Rejected(RejectReason::BackendFailure));
    }

    #[test]
    fn scorer_errors_become_backend_failures() {
        let mut scorer = InProcess::new("scorer", |line: &str| {
            let req: WireRequest = serde_json::from_str(line).unwrap();
            if req.id == "1" {
                format!(r#"{{"id":"{}","error":"overloaded"}}"#, req.id)
            } else {
                format!(r#"{{"id":"{}","perplexity":75.0}}"#, req.id)
            }
        });
        let mut records: Vec<_> = (0..3)
            .map(|i| {
                let mut r = TransferRecord::pending("c", i, LONG);
                r.candidate = Some(vec![LONG.to_string()]);
                r
            })
            .collect();
        let run = run_threshold_pipeline(records.clone(), &mut scorer, &GateConfig::default(), 2).unwrap();
        assert_eq!(run.accepted.len(), 2);
        assert_eq!(run.rejected.len(), 1);
        assert_eq!(run.rejected[0].sentence_index, 1);
        assert_eq!(run.rejected[0].status, Status::Rejected(RejectReason::BackendFailure));

        gate_perplexity(&mut records[0], &mut scorer, &GateConfig::default()).unwrap();
        assert_eq!(records[0].status, Status::Scored);
        assert_eq!(records[0].perplexity, Some(75.0));
    }

    #[test]
    fn config_validation() {
        assert!(GateConfig::default().validate().is_ok());
        let inverted = GateConfig {
            perplexity_low: 600.0,
            perplexity_high: 50.0,
            ..GateConfig::default()
        };
        assert!(inverted.validate().is_err());
        let zero = GateConfig {
            min_original_words: 0,
            ..GateConfig::default()
        };
        assert_eq!(zero.validate(), Err(ConfigError::MinWords));
    }
}

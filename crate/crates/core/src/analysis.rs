//! Length-bucket transfer analysis, pair sampling and edit-label
//! aggregation.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{describe, MetricReport, RecordScores, Summary};
use crate::text::round_sig6;
use crate::transfer::TransferRecord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("bucketing needs at least 4 records, got {0}")]
    TooFewRecords(usize),
    #[error("cannot sample {requested} pairs from {available}")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("unknown edit category `{0}`")]
    UnknownCategory(String),
}

/// Which side of a cut point a record equal to it falls on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    /// Buckets are `[lo, hi)`: a tie goes to the higher bucket.
    #[default]
    Higher,
    /// Buckets are `(lo, hi]`: a tie goes to the lower bucket.
    Lower,
}

impl FromStr for TieRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "higher" => Ok(TieRule::Higher),
            "lower" => Ok(TieRule::Lower),
            other => Err(format!("unknown tie rule `{other}` (expected higher or lower)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketSpec {
    pub min: usize,
    pub boundaries: [usize; 3],
    pub max: usize,
    pub tie_rule: TieRule,
}

impl BucketSpec {
    pub fn bucket_of(&self, length: usize) -> usize {
        match self.tie_rule {
            TieRule::Higher => self.boundaries.iter().filter(|&&b| length >= b).count(),
            TieRule::Lower => self.boundaries.iter().filter(|&&b| length > b).count(),
        }
    }

    pub fn range_label(&self, bucket: usize) -> String {
        let lo = if bucket == 0 { self.min } else { self.boundaries[bucket - 1] };
        let hi = if bucket == 3 { self.max } else { self.boundaries[bucket] };
        let closed_hi = bucket == 3 || self.tie_rule == TieRule::Lower;
        let closed_lo = bucket == 0 || self.tie_rule == TieRule::Higher;
        format!(
            "{}{}, {}{}",
            if closed_lo { '[' } else { '(' },
            lo,
            hi,
            if closed_hi { ']' } else { ')' }
        )
    }
}

/// Nearest-rank percentile of sorted values: the value at rank
/// `ceil(p * n)`.
pub fn nearest_rank(sorted: &[usize], p: f64) -> usize {
    let n = sorted.len();
    let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bucketing {
    pub spec: BucketSpec,
    /// Bucket index (0..4) of each input record.
    pub assignment: Vec<usize>,
}

impl Bucketing {
    pub fn sizes(&self) -> [usize; 4] {
        let mut sizes = [0; 4];
        for &b in &self.assignment {
            sizes[b] += 1;
        }
        sizes
    }
}

/// Cuts at the 25th, 50th and 75th nearest-rank percentiles of the lengths.
pub fn bucketize_by_length(lengths: &[usize], tie_rule: TieRule) -> Result<Bucketing, AnalysisError> {
    if lengths.len() < 4 {
        return Err(AnalysisError::TooFewRecords(lengths.len()));
    }
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    let spec = BucketSpec {
        min: sorted[0],
        boundaries: [0.25, 0.5, 0.75].map(|p| nearest_rank(&sorted, p)),
        max: sorted[sorted.len() - 1],
        tie_rule,
    };
    let assignment = lengths.iter().map(|&l| spec.bucket_of(l)).collect();
    Ok(Bucketing { spec, assignment })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub mean: f64,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub std: f64,
}

impl From<Summary> for MeanStd {
    fn from(s: Summary) -> Self {
        MeanStd { mean: s.mean, std: s.std }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketRow {
    pub range: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bleu: Option<MeanStd>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sari: Option<MeanStd>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fkgl_original: Option<MeanStd>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fkgl_transferred: Option<MeanStd>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferAnalysis {
    pub spec: BucketSpec,
    pub buckets: Vec<BucketRow>,
    pub summary: MetricReport,
}

/// Per-bucket mean and standard deviation of every metric. `scores` must be
/// aligned with `bucketing.assignment`.
pub fn bucket_metric_stats(bucketing: &Bucketing, scores: &[RecordScores]) -> TransferAnalysis {
    assert_eq!(bucketing.assignment.len(), scores.len(), "one score row per assigned record");
    let mut members: [Vec<&RecordScores>; 4] = Default::default();
    for (&b, s) in bucketing.assignment.iter().zip(scores) {
        members[b].push(s);
    }
    let buckets = members
        .iter()
        .enumerate()
        .map(|(b, rows)| {
            let stat = |f: fn(&RecordScores) -> f64| {
                let values: Vec<f64> = rows.iter().map(|s| f(s)).collect();
                describe(&values).ok().map(MeanStd::from)
            };
            BucketRow {
                range: bucketing.spec.range_label(b),
                n: rows.len(),
                bleu: stat(|s| s.bleu),
                sari: stat(|s| s.sari),
                fkgl_original: stat(|s| s.fkgl_original),
                fkgl_transferred: stat(|s| s.fkgl_transferred),
            }
        })
        .collect();
    TransferAnalysis {
        spec: bucketing.spec.clone(),
        buckets,
        summary: MetricReport::from_scores(scores),
    }
}

/// Buckets `scores` by original word count and summarizes each bucket.
pub fn analyze_transfer(scores: &[RecordScores], tie_rule: TieRule) -> Result<TransferAnalysis, AnalysisError> {
    let lengths: Vec<usize> = scores.iter().map(|s| s.original_word_count).collect();
    let bucketing = bucketize_by_length(&lengths, tie_rule)?;
    Ok(bucket_metric_stats(&bucketing, scores))
}

impl TransferAnalysis {
    /// Aligned plain-text table for terminals.
    pub fn to_table(&self) -> String {
        let cell = |m: Option<MeanStd>| match m {
            Some(m) => format!("{:.2} ± {:.2}", m.mean, m.std),
            None => "-".to_string(),
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:>6} {:>16} {:>16} {:>16} {:>16}",
            "length", "n", "bleu", "sari", "fkgl_original", "fkgl_transf."
        );
        for row in &self.buckets {
            let _ = writeln!(
                out,
                "{:<12} {:>6} {:>16} {:>16} {:>16} {:>16}",
                row.range,
                row.n,
                cell(row.bleu),
                cell(row.sari),
                cell(row.fkgl_original),
                cell(row.fkgl_transferred)
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{:<12} {:>6} {:>16} {:>16} {:>16} {:>16}",
            "all",
            s.n,
            cell(s.bleu.map(MeanStd::from)),
            cell(s.sari.map(MeanStd::from)),
            cell(s.fkgl_original.map(MeanStd::from)),
            cell(s.fkgl_transferred.map(MeanStd::from))
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledPair {
    pub pair_id: String,
    pub original: String,
    pub candidate: String,
}

/// Uniform sample without replacement, in a seed-determined order.
pub fn sample_pairs(records: &[TransferRecord], n: usize, seed: u64) -> Result<Vec<SampledPair>, AnalysisError> {
    if n > records.len() {
        return Err(AnalysisError::SampleTooLarge {
            requested: n,
            available: records.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..records.len()).collect();
    let (chosen, _) = indices.partial_shuffle(&mut rng, n);
    Ok(chosen
        .iter()
        .map(|&i| SampledPair {
            pair_id: records[i].pair_id(),
            original: records[i].original.clone(),
            candidate: records[i].joined_candidate().unwrap_or_default(),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditCategory {
    InterEvent,
    IntraEventSuccess,
    IntraEventFailure,
}

impl EditCategory {
    pub const ALL: [EditCategory; 3] = [
        EditCategory::InterEvent,
        EditCategory::IntraEventSuccess,
        EditCategory::IntraEventFailure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EditCategory::InterEvent => "inter_event",
            EditCategory::IntraEventSuccess => "intra_event_success",
            EditCategory::IntraEventFailure => "intra_event_failure",
        }
    }
}

impl fmt::Display for EditCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EditCategory {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EditCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| AnalysisError::UnknownCategory(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditLabel {
    pub pair_id: String,
    pub rater_id: String,
    pub category: EditCategory,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EditDistribution {
    pub pairs: usize,
    pub resolved: usize,
    pub unresolved: usize,
    pub counts: BTreeMap<EditCategory, usize>,
    /// Share of resolved pairs per category; all zero when none resolved.
    pub proportions: BTreeMap<EditCategory, f64>,
}

/// Majority category per pair; a tie for the top count leaves the pair
/// unresolved.
pub fn edit_distribution(labels: &[EditLabel]) -> EditDistribution {
    let mut votes: HashMap<&str, BTreeMap<EditCategory, usize>> = HashMap::new();
    for label in labels {
        *votes.entry(&label.pair_id).or_default().entry(label.category).or_insert(0) += 1;
    }
    let mut counts: BTreeMap<EditCategory, usize> = EditCategory::ALL.iter().map(|&c| (c, 0)).collect();
    let mut unresolved = 0;
    for tally in votes.values() {
        let top = tally.values().copied().max().unwrap_or(0);
        let mut leaders = tally.iter().filter(|(_, &n)| n == top);
        match (leaders.next(), leaders.next()) {
            (Some((&category, _)), None) => *counts.entry(category).or_insert(0) += 1,
            _ => unresolved += 1,
        }
    }
    let resolved = votes.len() - unresolved;
    let proportions = counts
        .iter()
        .map(|(&c, &n)| {
            let p = if resolved == 0 { 0.0 } else { n as f64 / resolved as f64 };
            (c, p)
        })
        .collect();
    EditDistribution {
        pairs: votes.len(),
        resolved,
        unresolved,
        counts,
        proportions,
    }
}

impl EditDistribution {
    /// Proportions rounded for reports.
    pub fn rounded(&self) -> BTreeMap<EditCategory, f64> {
        self.proportions.iter().map(|(&c, &p)| (c, round_sig6(p))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_lengths_cut_at_quartiles() {
        let lengths: Vec<usize> = (1..=100).collect();
        let b = bucketize_by_length(&lengths, TieRule::Higher).unwrap();
        assert_eq!(b.spec.boundaries, [25, 50, 75]);
        assert_eq!(b.sizes(), [24, 25, 25, 26]);
        assert_eq!(b.spec.range_label(0), "[1, 25)");
        assert_eq!(b.spec.range_label(3), "[75, 100]");
        let lower = bucketize_by_length(&lengths, TieRule::Lower).unwrap();
        assert_eq!(lower.sizes(), [25, 25, 25, 25]);
        assert_eq!(lower.spec.range_label(1), "(25, 50]");
    }

    #[test]
    fn identical_lengths_land_in_last_bucket() {
        let b = bucketize_by_length(&[7; 9], TieRule::Higher).unwrap();
        assert_eq!(b.spec.boundaries, [7, 7, 7]);
        assert_eq!(b.sizes(), [0, 0, 0, 9]);
        assert_eq!(
            bucketize_by_length(&[1, 2, 3], TieRule::Higher),
            Err(AnalysisError::TooFewRecords(3))
        );
    }

    fn scores(bleu: f64, len: usize) -> RecordScores {
        RecordScores {
            pair_id: String::new(),
            original_word_count: len,
            bleu,
            sari: 50.0,
            fkgl_original: 10.0,
            fkgl_transferred: 8.0,
        }
    }

    #[test]
    fn bucket_stats_and_empty_rows() {
        let rows = vec![scores(1.0, 5), scores(2.0, 5), scores(3.0, 5), scores(9.0, 5)];
        let bucketing = Bucketing {
            spec: BucketSpec {
                min: 5,
                boundaries: [10, 20, 30],
                max: 40,
                tie_rule: TieRule::Higher,
            },
            assignment: vec![0, 0, 0, 3],
        };
        let analysis = bucket_metric_stats(&bucketing, &rows);
        assert_eq!(analysis.buckets[0].bleu, Some(MeanStd { mean: 2.0, std: 1.0 }));
        assert_eq!(analysis.buckets[1].n, 0);
        assert_eq!(analysis.buckets[1].bleu, None);
        let json = serde_json::to_value(&analysis.buckets[1]).unwrap();
        assert_eq!(json, serde_json::json!({"range": "[10, 20)", "n": 0}));
        assert!(analysis.to_table().contains("2.00 ± 1.00"));
    }

    #[test]
    fn sampling_is_seeded() {
        let records: Vec<_> = (0..70)
            .map(|i| {
                let mut r = TransferRecord::pending("c", i, format!("Sentence {i}."));
                r.candidate = Some(vec![format!("Sentence {i}.")]);
                r
            })
            .collect();
        let a = sample_pairs(&records, 50, 7).unwrap();
        assert_eq!(a, sample_pairs(&records, 50, 7).unwrap());
        assert_ne!(a, sample_pairs(&records, 50, 8).unwrap());
        let mut ids: Vec<_> = a.iter().map(|p| p.pair_id.clone()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 50);
        let all = sample_pairs(&records, 70, 7).unwrap();
        assert_eq!(all.len(), 70);
        assert!(sample_pairs(&records, 71, 7).is_err());
    }

    fn label(pair: usize, rater: &str, category: EditCategory) -> EditLabel {
        EditLabel {
            pair_id: format!("p{pair}"),
            rater_id: rater.into(),
            category,
        }
    }

    #[test]
    fn edit_distribution_majority_and_ties() {
        let mut labels = Vec::new();
        for i in 0..50 {
            let category = match i {
                0..=15 => EditCategory::InterEvent,
                16..=45 => EditCategory::IntraEventSuccess,
                _ => EditCategory::IntraEventFailure,
            };
            labels.push(label(i, "r1", category));
        }
        let d = edit_distribution(&labels);
        assert_eq!(d.resolved, 50);
        assert_eq!(d.proportions[&EditCategory::InterEvent], 0.32);
        assert_eq!(d.proportions[&EditCategory::IntraEventSuccess], 0.6);
        assert_eq!(d.proportions[&EditCategory::IntraEventFailure], 0.08);

        let split = edit_distribution(&[
            label(0, "r1", EditCategory::InterEvent),
            label(0, "r2", EditCategory::IntraEventFailure),
        ]);
        assert_eq!((split.resolved, split.unresolved), (0, 1));
    }

    #[test]
    fn category_names_round_trip() {
        for c in EditCategory::ALL {
            assert_eq!(c.as_str().parse::<EditCategory>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
    }
}

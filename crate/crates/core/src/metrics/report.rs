use serde::{Deserialize, Serialize};

use super::{describe, fkgl, sari, sentence_bleu, MetricError, Summary, DEFAULT_MAX_N};
use crate::segment::tokenize_words;
use crate::text::round_sig6;
use crate::transfer::TransferRecord;

/// Sentence-level scores of one (original, candidate) pair. Values are
/// stored rounded to six significant digits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordScores {
    pub pair_id: String,
    pub original_word_count: usize,
    pub bleu: f64,
    pub sari: f64,
    pub fkgl_original: f64,
    pub fkgl_transferred: f64,
}

fn tokens(text: &str) -> Vec<String> {
    tokenize_words(text).into_iter().map(|t| t.text).collect()
}

/// Self-BLEU and SARI against the original as the only reference, plus FKGL
/// on both sides. Tokens keep their case and punctuation.
pub fn score_pair(
    pair_id: &str,
    original: &str,
    candidate: &str,
) -> Result<RecordScores, MetricError> {
    let input = tokens(original);
    let output = tokens(candidate);
    let bleu = sentence_bleu(&output, &input, DEFAULT_MAX_N);
    let sari = sari(&input, &output, std::slice::from_ref(&input), DEFAULT_MAX_N)?;
    Ok(RecordScores {
        pair_id: pair_id.to_string(),
        original_word_count: crate::segment::word_count(original),
        bleu: round_sig6(bleu),
        sari: round_sig6(sari),
        fkgl_original: round_sig6(fkgl(original)?),
        fkgl_transferred: round_sig6(fkgl(candidate)?),
    })
}

impl RecordScores {
    pub fn for_record(record: &TransferRecord) -> Result<RecordScores, MetricError> {
        let candidate = record.joined_candidate().unwrap_or_default();
        score_pair(&record.pair_id(), &record.original, &candidate)
    }
}

/// Mean, standard deviation and count per metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bleu: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sari: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fkgl_original: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fkgl_transferred: Option<Summary>,
}

impl MetricReport {
    pub fn from_scores<'a>(scores: impl IntoIterator<Item = &'a RecordScores>) -> MetricReport {
        let scores: Vec<&RecordScores> = scores.into_iter().collect();
        let column = |f: fn(&RecordScores) -> f64| {
            let values: Vec<f64> = scores.iter().map(|s| f(s)).collect();
            describe(&values).ok()
        };
        MetricReport {
            n: scores.len(),
            bleu: column(|s| s.bleu),
            sari: column(|s| s.sari),
            fkgl_original: column(|s| s.fkgl_original),
            fkgl_transferred: column(|s| s.fkgl_transferred),
        }
    }

    /// Rows of (name, summary) in report order.
    pub fn rows(&self) -> [(&'static str, Option<Summary>); 4] {
        [
            ("bleu", self.bleu),
            ("sari", self.sari),
            ("fkgl_original", self.fkgl_original),
            ("fkgl_transferred", self.fkgl_transferred),
        ]
    }
}

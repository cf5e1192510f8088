//! Gate predicates written from the rules directly, without the library's
//! tokenizer, for checking thresholding decisions.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use splitqa_core::threshold::GateConfig;
use splitqa_core::transfer::TransferRecord;

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_threshold_fixture() -> Vec<TransferRecord> {
    let text = std::fs::read_to_string(fixture_path("threshold_records.jsonl")).expect("fixture present");
    text.lines().map(|l| serde_json::from_str(l).expect("fixture record")).collect()
}

fn words(text: &str) -> usize {
    text.split_whitespace().filter(|w| w.chars().any(char::is_alphanumeric)).count()
}

fn numeric_chunks(text: &str) -> HashMap<String, usize> {
    let mut out = HashMap::new();
    for chunk in text.split_whitespace() {
        let core = chunk.trim_matches(|c: char| !c.is_alphanumeric());
        let parts: Vec<&str> = core.split(|c| ".,/-:".contains(c)).collect();
        if !core.is_empty() && parts.iter().all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit())) {
            *out.entry(core.to_string()).or_insert(0) += 1;
        }
    }
    out
}

pub fn ppl_ok(r: &TransferRecord, c: &GateConfig) -> bool {
    matches!(r.perplexity, Some(p) if p >= c.perplexity_low && p <= c.perplexity_high)
}

pub fn length_ok(r: &TransferRecord, c: &GateConfig) -> bool {
    words(&r.original) >= c.min_original_words
}

pub fn distinct_ok(r: &TransferRecord) -> bool {
    let Some(cand) = &r.candidate else { return false };
    let trimmed: Vec<&str> = cand.iter().map(|s| s.trim()).collect();
    (0..trimmed.len()).all(|i| (i + 1..trimmed.len()).all(|j| trimmed[i] != trimmed[j]))
}

pub fn numbers_ok(r: &TransferRecord, c: &GateConfig) -> bool {
    if !c.enforce_numeric {
        return true;
    }
    let Some(cand) = &r.candidate else { return false };
    let have = numeric_chunks(&cand.join(" "));
    numeric_chunks(&r.original)
        .iter()
        .all(|(tok, n)| have.get(tok).copied().unwrap_or(0) >= *n)
}

/// True when the record satisfies every gate.
pub fn all_ok(r: &TransferRecord, c: &GateConfig) -> bool {
    ppl_ok(r, c) && length_ok(r, c) && distinct_ok(r) && numbers_ok(r, c)
}

/// True when `reason` names a predicate the record actually violates.
pub fn reason_is_sound(r: &TransferRecord, c: &GateConfig, reason: &str) -> bool {
    match reason {
        "perplexity_out_of_range" => !ppl_ok(r, c),
        "original_too_short" => !length_ok(r, c),
        "redundant" => !distinct_ok(r),
        "numeric_loss" => !numbers_ok(r, c),
        "backend_failure" => r.candidate.is_none() || r.error.is_some(),
        _ => false,
    }
}

/// Bucket sizes differ from an even nearest-rank split only through ties:
/// with `[lo, hi)` buckets, the number of records below cut `k` may fall
/// short of rank `ceil(k * n / 4) - 1` by fewer than the records equal to
/// that cut value.
pub fn sizes_explained_by_ties(lengths: &[usize], boundaries: [usize; 3], sizes: [usize; 4]) -> bool {
    let n = lengths.len();
    let mut below = 0;
    (0..3).all(|k| {
        below += sizes[k];
        let rank = ((k + 1) * n).div_ceil(4);
        let tied = lengths.iter().filter(|&&l| l == boundaries[k]).count();
        below < rank && rank - 1 - below < tied
    })
}

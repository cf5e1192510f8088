//! Evaluation metrics: sentence BLEU, SARI, FKGL, SQuAD EM/F1,
//! Krippendorff's alpha and descriptive statistics.
//!
//! Every function here is pure.

mod agreement;
mod bleu;
mod readability;
mod report;
mod sari;
mod squad;
mod stats;

use thiserror::Error;

pub use agreement::{krippendorff_alpha, RatingMatrix};
pub use bleu::sentence_bleu;
pub use readability::{count_syllables, fkgl};
pub use report::{score_pair, MetricReport, RecordScores};
pub use sari::sari;
pub use squad::{squad_em, squad_f1, squad_normalize};
pub use stats::{describe, Summary};

pub const DEFAULT_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("`{0}` contains no letters")]
    NoLetters(String),
    #[error("text contains no word tokens")]
    NoWords,
    #[error("cannot describe an empty sample")]
    EmptySample,
    #[error("alpha is undefined: fewer than two items carry two or more ratings")]
    AlphaUndefined,
    #[error("input must contain at least one token")]
    EmptyInput,
    #[error("at least one reference is required")]
    NoReferences,
}

/// Counts n-grams of order `n` as a multiset.
pub(crate) fn ngram_counts<T: AsRef<str>>(
    tokens: &[T],
    n: usize,
) -> std::collections::HashMap<Vec<&str>, usize> {
    let mut counts = std::collections::HashMap::new();
    if n == 0 || tokens.len() < n {
        return counts;
    }
    for window in tokens.windows(n) {
        let gram: Vec<&str> = window.iter().map(AsRef::as_ref).collect();
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

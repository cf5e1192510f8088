//! SQuAD answer normalization, exact match and token F1.

use std::collections::HashMap;

/// Lower-cases, strips ASCII punctuation, drops the articles "a", "an" and
/// "the", and collapses whitespace. Same order as the official SQuAD
/// evaluation script.
pub fn squad_normalize(text: &str) -> String {
    let lowered = text.to_lowercase();
    let without_punct: String = lowered
        .chars()
        .filter(|c| !c.is_ascii_punctuation())
        .collect();
    without_punct
        .split_whitespace()
        .filter(|w| !matches!(*w, "a" | "an" | "the"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn squad_em<S: AsRef<str>>(prediction: &str, golds: &[S]) -> f64 {
    let pred = squad_normalize(prediction);
    if golds.iter().any(|g| squad_normalize(g.as_ref()) == pred) {
        1.0
    } else {
        0.0
    }
}

fn token_f1(prediction: &str, gold: &str) -> f64 {
    let pred = squad_normalize(prediction);
    let gold = squad_normalize(gold);
    let pred_tokens: Vec<&str> = pred.split_whitespace().collect();
    let gold_tokens: Vec<&str> = gold.split_whitespace().collect();
    if pred_tokens.is_empty() || gold_tokens.is_empty() {
        return if pred_tokens == gold_tokens { 1.0 } else { 0.0 };
    }
    let mut gold_counts: HashMap<&str, usize> = HashMap::new();
    for t in &gold_tokens {
        *gold_counts.entry(t).or_insert(0) += 1;
    }
    let mut same = 0usize;
    for t in &pred_tokens {
        if let Some(c) = gold_counts.get_mut(t) {
            if *c > 0 {
                *c -= 1;
                same += 1;
            }
        }
    }
    if same == 0 {
        return 0.0;
    }
    let precision = same as f64 / pred_tokens.len() as f64;
    let recall = same as f64 / gold_tokens.len() as f64;
    2.0 * precision * recall / (precision + recall)
}

/// Maximum token-overlap F1 over the gold answers.
pub fn squad_f1<S: AsRef<str>>(prediction: &str, golds: &[S]) -> f64 {
    golds
        .iter()
        .map(|g| token_f1(prediction, g.as_ref()))
        .fold(0.0, f64::max)
}

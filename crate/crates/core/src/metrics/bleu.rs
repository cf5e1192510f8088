use super::ngram_counts;

/// Sentence-level BLEU on a 0–100 scale.
///
/// Modified n-gram precisions up to `max_n` are combined with uniform
/// weights. For orders two and up both the clipped match count and the
/// candidate n-gram count are incremented by one before dividing; a zero
/// unigram precision yields a score of zero. An empty candidate or
/// reference scores zero.
pub fn sentence_bleu<T: AsRef<str>>(candidate: &[T], reference: &[T], max_n: usize) -> f64 {
    if candidate.is_empty() || reference.is_empty() || max_n == 0 {
        return 0.0;
    }
    let mut log_precision_sum = 0.0;
    for n in 1..=max_n {
        let cand = ngram_counts(candidate, n);
        let refs = ngram_counts(reference, n);
        let total: usize = cand.values().sum();
        let matched: usize = cand
            .iter()
            .map(|(gram, &count)| count.min(refs.get(gram).copied().unwrap_or(0)))
            .sum();
        let precision = if n == 1 {
            if matched == 0 {
                return 0.0;
            }
            matched as f64 / total as f64
        } else {
            (matched + 1) as f64 / (total + 1) as f64
        };
        log_precision_sum += precision.ln();
    }
    let c = candidate.len() as f64;
    let r = reference.len() as f64;
    let brevity = if c >= r { 1.0 } else { (1.0 - r / c).exp() };
    (100.0 * brevity * (log_precision_sum / max_n as f64).exp()).clamp(0.0, 100.0)
}

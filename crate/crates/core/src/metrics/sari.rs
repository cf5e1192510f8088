use std::collections::HashMap;

use super::{ngram_counts, MetricError};

type Counts<'a> = HashMap<Vec<&'a str>, usize>;

fn scaled<'a>(counts: &Counts<'a>, k: usize) -> Counts<'a> {
    counts.iter().map(|(g, &c)| (g.clone(), c * k)).collect()
}

fn intersect<'a>(a: &Counts<'a>, b: &Counts<'a>) -> Counts<'a> {
    a.iter()
        .filter_map(|(g, &c)| {
            let m = c.min(b.get(g).copied().unwrap_or(0));
            (m > 0).then(|| (g.clone(), m))
        })
        .collect()
}

fn subtract<'a>(a: &Counts<'a>, b: &Counts<'a>) -> Counts<'a> {
    a.iter()
        .filter_map(|(g, &c)| {
            let d = c.saturating_sub(b.get(g).copied().unwrap_or(0));
            (d > 0).then(|| (g.clone(), d))
        })
        .collect()
}

/// Mean over the distinct n-grams of `base` of `good[g] / base[g]`.
fn ratio(good: &Counts, base: &Counts) -> f64 {
    let sum: f64 = base
        .iter()
        .map(|(g, &c)| good.get(g).copied().unwrap_or(0) as f64 / c as f64)
        .sum();
    sum / base.len() as f64
}

/// Precision and recall of one edit operation. When the system side and
/// the reference side are both empty the operation is vacuously correct.
fn precision_recall(good: &Counts, system: &Counts, reference: &Counts) -> (f64, f64) {
    if system.is_empty() && reference.is_empty() {
        return (1.0, 1.0);
    }
    let p = if system.is_empty() { 0.0 } else { ratio(good, system) };
    let r = if reference.is_empty() { 0.0 } else { ratio(good, reference) };
    (p, r)
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// SARI on a 0–100 scale.
///
/// For each order n, input and output n-gram counts are scaled by the
/// number of references and compared against the summed reference counts:
///
/// * keep: system `I ∩ O`, reference `I ∩ R`, good `I ∩ O ∩ R`
/// * delete: system `I − O`, reference `I − R`, good `(I − O) − R`
/// * add: system `O − I`, reference `R − I`, good `(O − I) ∩ R`
///
/// with multiset intersection and saturating difference. Precision and
/// recall average `good[g] / side[g]` over the distinct n-grams of a side.
/// The score is `100 * (F_add + F_keep + P_del) / 3` with each term
/// averaged over orders `1..=max_n`.
pub fn sari<T: AsRef<str>>(
    input: &[T],
    output: &[T],
    references: &[Vec<T>],
    max_n: usize,
) -> Result<f64, MetricError> {
    if input.is_empty() || max_n == 0 {
        return Err(MetricError::EmptyInput);
    }
    if references.is_empty() {
        return Err(MetricError::NoReferences);
    }
    let k = references.len();
    let (mut keep, mut delete, mut add) = (0.0, 0.0, 0.0);
    for n in 1..=max_n {
        let inp = scaled(&ngram_counts(input, n), k);
        let out = scaled(&ngram_counts(output, n), k);
        let mut refs: Counts = HashMap::new();
        for reference in references {
            for (g, c) in ngram_counts(reference, n) {
                *refs.entry(g).or_insert(0) += c;
            }
        }

        let keep_sys = intersect(&inp, &out);
        let keep_good = intersect(&keep_sys, &refs);
        let keep_ref = intersect(&inp, &refs);
        let (p, r) = precision_recall(&keep_good, &keep_sys, &keep_ref);
        keep += f1(p, r);

        let del_sys = subtract(&inp, &out);
        let del_good = subtract(&del_sys, &refs);
        let del_ref = subtract(&inp, &refs);
        delete += precision_recall(&del_good, &del_sys, &del_ref).0;

        let add_sys = subtract(&out, &inp);
        let add_good = intersect(&add_sys, &refs);
        let add_ref = subtract(&refs, &inp);
        let (p, r) = precision_recall(&add_good, &add_sys, &add_ref);
        add += f1(p, r);
    }
    let orders = max_n as f64;
    let score = 100.0 * (add / orders + keep / orders + delete / orders) / 3.0;
    Ok(score.clamp(0.0, 100.0))
}

//! Slow reference implementations used to cross-check the library.

#![allow(dead_code)]

use rand::Rng;

type Gram = Vec<String>;

fn grams(tokens: &[String], n: usize) -> Vec<Gram> {
    if tokens.len() < n {
        return Vec::new();
    }
    (0..=tokens.len() - n).map(|i| tokens[i..i + n].to_vec()).collect()
}

fn count(list: &[Gram], g: &Gram) -> usize {
    list.iter().filter(|x| *x == g).count()
}

fn distinct(list: &[Gram]) -> Vec<Gram> {
    let mut out: Vec<Gram> = Vec::new();
    for g in list {
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

fn repeat(list: &[Gram], k: usize) -> Vec<Gram> {
    (0..k).flat_map(|_| list.iter().cloned()).collect()
}

fn inter(a: &[Gram], b: &[Gram]) -> Vec<Gram> {
    distinct(a)
        .into_iter()
        .flat_map(|g| {
            let m = count(a, &g).min(count(b, &g));
            std::iter::repeat_n(g, m)
        })
        .collect()
}

fn diff(a: &[Gram], b: &[Gram]) -> Vec<Gram> {
    distinct(a)
        .into_iter()
        .flat_map(|g| {
            let m = count(a, &g).saturating_sub(count(b, &g));
            std::iter::repeat_n(g, m)
        })
        .collect()
}

fn ratio(good: &[Gram], base: &[Gram]) -> f64 {
    let d = distinct(base);
    d.iter().map(|g| count(good, g) as f64 / count(base, g) as f64).sum::<f64>() / d.len() as f64
}

fn pr(good: &[Gram], sys: &[Gram], reference: &[Gram]) -> (f64, f64) {
    match (sys.is_empty(), reference.is_empty()) {
        (true, true) => (1.0, 1.0),
        (s_empty, r_empty) => (
            if s_empty { 0.0 } else { ratio(good, sys) },
            if r_empty { 0.0 } else { ratio(good, reference) },
        ),
    }
}

fn f1((p, r): (f64, f64)) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// SARI by explicit enumeration of n-gram occurrence lists.
pub fn brute_sari(input: &[String], output: &[String], references: &[Vec<String>], max_n: usize) -> f64 {
    let k = references.len();
    let mut total = 0.0;
    for n in 1..=max_n {
        let i = repeat(&grams(input, n), k);
        let o = repeat(&grams(output, n), k);
        let r: Vec<Gram> = references.iter().flat_map(|x| grams(x, n)).collect();
        let keep = f1(pr(&inter(&inter(&i, &o), &r), &inter(&i, &o), &inter(&i, &r)));
        let del = pr(&diff(&diff(&i, &o), &r), &diff(&i, &o), &diff(&i, &r)).0;
        let add = f1(pr(&inter(&diff(&o, &i), &r), &diff(&o, &i), &diff(&r, &i)));
        total += keep + del + add;
    }
    100.0 * total / (3.0 * max_n as f64)
}

/// Alpha as one minus observed over expected mean pairwise squared
/// difference, with a direct double loop over rating pairs.
pub fn brute_alpha(rows: &[Vec<Option<f64>>]) -> f64 {
    let units: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().flatten().copied().collect::<Vec<f64>>())
        .filter(|u| u.len() >= 2)
        .collect();
    let pooled: Vec<f64> = units.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let mut observed = 0.0;
    for unit in &units {
        let mut within = 0.0;
        for (i, a) in unit.iter().enumerate() {
            for (j, b) in unit.iter().enumerate() {
                if i != j {
                    within += (a - b) * (a - b);
                }
            }
        }
        observed += within / (unit.len() - 1) as f64;
    }
    observed /= n;
    let mut expected = 0.0;
    for (p, a) in pooled.iter().enumerate() {
        for (q, b) in pooled.iter().enumerate() {
            if p != q {
                expected += (a - b) * (a - b);
            }
        }
    }
    expected /= n * (n - 1.0);
    if expected == 0.0 {
        1.0
    } else {
        1.0 - observed / expected
    }
}

const VOCAB: [&str; 6] = ["a", "b", "c", "d", "e", "."];

pub fn random_tokens<R: Rng>(rng: &mut R, min: usize, max: usize) -> Vec<String> {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| VOCAB[rng.gen_range(0..VOCAB.len())].to_string()).collect()
}

/// Random SARI instance: (input, output, references).
pub fn random_sari_instance<R: Rng>(rng: &mut R) -> (Vec<String>, Vec<String>, Vec<Vec<String>>) {
    let input = random_tokens(rng, 1, 9);
    let output = random_tokens(rng, 0, 9);
    let k = rng.gen_range(1..=3);
    let references = (0..k).map(|_| random_tokens(rng, 1, 9)).collect();
    (input, output, references)
}

/// Random 10-item x 5-rater Likert matrix with missing cells and at least
/// two pairable items.
pub fn random_rating_rows<R: Rng>(rng: &mut R) -> Vec<Vec<Option<f64>>> {
    loop {
        let rows: Vec<Vec<Option<f64>>> = (0..10)
            .map(|_| {
                (0..5)
                    .map(|_| rng.gen_bool(0.8).then(|| rng.gen_range(1..=5) as f64))
                    .collect()
            })
            .collect();
        if rows.iter().filter(|r| r.iter().flatten().count() >= 2).count() >= 2 {
            return rows;
        }
    }
}

//! Krippendorff's alpha, interval level.

use super::MetricError;

/// Items × raters grid; `None` marks a missing rating.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingMatrix {
    rows: Vec<Vec<Option<f64>>>,
}

impl RatingMatrix {
    pub fn new(rows: Vec<Vec<Option<f64>>>) -> Self {
        RatingMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<Option<f64>>] {
        &self.rows
    }

    /// Number of items with at least two ratings.
    pub fn pairable_items(&self) -> usize {
        self.rows
            .iter()
            .filter(|row| row.iter().flatten().count() >= 2)
            .count()
    }
}

/// Alpha via the coincidence matrix with squared-difference distance.
///
/// Items with fewer than two ratings do not contribute. When every pairable
/// value is identical the expected disagreement is zero and alpha is 1.
pub fn krippendorff_alpha(matrix: &RatingMatrix) -> Result<f64, MetricError> {
    if matrix.pairable_items() < 2 {
        return Err(MetricError::AlphaUndefined);
    }
    let mut values: Vec<f64> = matrix.rows.iter().flatten().flatten().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let index = |v: f64| {
        values
            .binary_search_by(|probe| probe.total_cmp(&v))
            .expect("value was collected")
    };

    let k = values.len();
    let mut coincidence = vec![vec![0.0f64; k]; k];
    for row in &matrix.rows {
        let unit: Vec<usize> = row.iter().flatten().map(|&v| index(v)).collect();
        let m = unit.len();
        if m < 2 {
            continue;
        }
        let weight = 1.0 / (m - 1) as f64;
        for (i, &a) in unit.iter().enumerate() {
            for (j, &b) in unit.iter().enumerate() {
                if i != j {
                    coincidence[a][b] += weight;
                }
            }
        }
    }

    let marginals: Vec<f64> = coincidence.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = marginals.iter().sum();
    let delta = |a: usize, b: usize| (values[a] - values[b]).powi(2);

    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..k {
        for d in 0..k {
            observed += coincidence[c][d] * delta(c, d);
            expected += marginals[c] * marginals[d] * delta(c, d);
        }
    }
    observed /= n;
    expected /= n * (n - 1.0);
    if expected == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 - observed / expected)
}

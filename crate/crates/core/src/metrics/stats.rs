use serde::{Deserialize, Serialize};

use super::MetricError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub mean: f64,
    #[serde(serialize_with = "crate::text::sig6::serialize")]
    pub std: f64,
    pub n: usize,
}

/// Mean and sample standard deviation (divisor n - 1, zero for n = 1).
pub fn describe(values: &[f64]) -> Result<Summary, MetricError> {
    if values.is_empty() {
        return Err(MetricError::EmptySample);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    Ok(Summary { mean, std, n })
}

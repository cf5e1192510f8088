//! Agreement reports built from the latest record per logical key.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use splitqa_core::analysis::{edit_distribution, EditCategory, EditLabel};
use splitqa_core::metrics::{describe, krippendorff_alpha, RatingMatrix, Summary};
use splitqa_core::text::round_sig6;

use crate::model::{AnnotationTask, EditLabelRecord, Metric, RatingRecord, TaskKind};

/// Alpha value, or the marker used when it is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Value(f64),
    Unavailable,
}

pub const UNAVAILABLE: &str = "unavailable";

impl Alpha {
    pub fn value(self) -> Option<f64> {
        match self {
            Alpha::Value(v) => Some(v),
            Alpha::Unavailable => None,
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Alpha::Value(v) => s.serialize_f64(round_sig6(*v)),
            Alpha::Unavailable => s.serialize_str(UNAVAILABLE),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricAgreement {
    /// Mean and spread of all scores on this metric; null without ratings.
    pub mean: Option<Summary>,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRatingCounts {
    pub pair_id: String,
    pub counts: BTreeMap<Metric, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub task_id: String,
    pub kind: TaskKind,
    pub pairs: usize,
    pub raters: Vec<String>,
    pub ratings: usize,
    pub metrics: BTreeMap<Metric, MetricAgreement>,
    /// Mean of the per-metric alphas; unavailable if any of them is.
    pub averaged_alpha: Alpha,
    pub per_pair: Vec<PairRatingCounts>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairLabelCount {
    pub pair_id: String,
    pub labels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionView {
    pub pairs: usize,
    pub resolved: usize,
    pub unresolved: usize,
    pub counts: BTreeMap<EditCategory, usize>,
    pub proportions: BTreeMap<EditCategory, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub task_id: String,
    pub kind: TaskKind,
    pub pairs: usize,
    pub raters: Vec<String>,
    pub labels: usize,
    pub per_pair: Vec<PairLabelCount>,
    pub edit_distribution: DistributionView,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Quality(QualityReport),
    Classification(ClassificationReport),
}

/// Items are the task pairs in order, raters are sorted by id.
pub fn rating_matrix(task: &AnnotationTask, ratings: &[&RatingRecord], metric: Metric) -> RatingMatrix {
    let raters = sorted_raters(ratings.iter().map(|r| r.rater_id.as_str()));
    let mut rows = vec![vec![None; raters.len()]; task.pairs.len()];
    for r in ratings.iter().filter(|r| r.metric == metric) {
        if let (Some(item), Ok(col)) = (task.pair_index(&r.pair_id), raters.binary_search(&r.rater_id)) {
            rows[item][col] = Some(f64::from(r.score));
        }
    }
    RatingMatrix::new(rows)
}

fn sorted_raters<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut raters: Vec<String> = ids.map(str::to_string).collect();
    raters.sort();
    raters.dedup();
    raters
}

pub fn build_report(task: &AnnotationTask, ratings: &[&RatingRecord], labels: &[&EditLabelRecord]) -> Report {
    match task.kind {
        TaskKind::QualityRating => Report::Quality(quality_report(task, ratings)),
        TaskKind::EditClassification => Report::Classification(classification_report(task, labels)),
    }
}

fn quality_report(task: &AnnotationTask, ratings: &[&RatingRecord]) -> QualityReport {
    let mut metrics = BTreeMap::new();
    for metric in Metric::ALL {
        let scores: Vec<f64> = ratings
            .iter()
            .filter(|r| r.metric == metric)
            .map(|r| f64::from(r.score))
            .collect();
        let alpha = match krippendorff_alpha(&rating_matrix(task, ratings, metric)) {
            Ok(a) => Alpha::Value(a),
            Err(_) => Alpha::Unavailable,
        };
        metrics.insert(
            metric,
            MetricAgreement {
                mean: describe(&scores).ok(),
                alpha,
            },
        );
    }
    let alphas: Option<Vec<f64>> = metrics.values().map(|m| m.alpha.value()).collect();
    let averaged_alpha = match alphas {
        Some(a) => Alpha::Value(a.iter().sum::<f64>() / a.len() as f64),
        None => Alpha::Unavailable,
    };
    let per_pair = task
        .pairs
        .iter()
        .map(|p| PairRatingCounts {
            pair_id: p.pair_id.clone(),
            counts: Metric::ALL
                .iter()
                .map(|&m| {
                    let n = ratings.iter().filter(|r| r.pair_id == p.pair_id && r.metric == m).count();
                    (m, n)
                })
                .collect(),
        })
        .collect();
    QualityReport {
        task_id: task.task_id.clone(),
        kind: task.kind,
        pairs: task.pairs.len(),
        raters: sorted_raters(ratings.iter().map(|r| r.rater_id.as_str())),
        ratings: ratings.len(),
        metrics,
        averaged_alpha,
        per_pair,
    }
}

fn classification_report(task: &AnnotationTask, labels: &[&EditLabelRecord]) -> ClassificationReport {
    let plain: Vec<EditLabel> = labels
        .iter()
        .map(|l| EditLabel {
            pair_id: l.pair_id.clone(),
            rater_id: l.rater_id.clone(),
            category: l.category,
        })
        .collect();
    let dist = edit_distribution(&plain);
    ClassificationReport {
        task_id: task.task_id.clone(),
        kind: task.kind,
        pairs: task.pairs.len(),
        raters: sorted_raters(labels.iter().map(|l| l.rater_id.as_str())),
        labels: labels.len(),
        per_pair: task
            .pairs
            .iter()
            .map(|p| PairLabelCount {
                pair_id: p.pair_id.clone(),
                labels: labels.iter().filter(|l| l.pair_id == p.pair_id).count(),
            })
            .collect(),
        edit_distribution: DistributionView {
            proportions: dist.rounded(),
            pairs: dist.pairs,
            resolved: dist.resolved,
            unresolved: dist.unresolved,
            counts: dist.counts,
        },
    }
}

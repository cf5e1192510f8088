use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use splitqa_core::analysis::{EditCategory, SampledPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    QualityRating,
    EditClassification,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::QualityRating => "quality_rating",
            TaskKind::EditClassification => "edit_classification",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quality_rating" => Ok(TaskKind::QualityRating),
            "edit_classification" => Ok(TaskKind::EditClassification),
            _ => Err(format!("unknown task kind `{s}`")),
        }
    }
}

/// The three Likert dimensions of the quality study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Fluency,
    RelativeSimplicity,
    ContentPreservation,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Fluency, Metric::RelativeSimplicity, Metric::ContentPreservation];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Fluency => "fluency",
            Metric::RelativeSimplicity => "relative_simplicity",
            Metric::ContentPreservation => "content_preservation",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown metric `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationTask {
    pub task_id: String,
    pub kind: TaskKind,
    pub pairs: Vec<SampledPair>,
}

impl AnnotationTask {
    pub fn new(kind: TaskKind, pairs: Vec<SampledPair>) -> Self {
        AnnotationTask {
            task_id: task_id(kind, &pairs),
            kind,
            pairs,
        }
    }

    pub fn pair_index(&self, pair_id: &str) -> Option<usize> {
        self.pairs.iter().position(|p| p.pair_id == pair_id)
    }

    /// Responses a rater owes per pair.
    pub fn responses_per_pair(&self) -> usize {
        match self.kind {
            TaskKind::QualityRating => Metric::ALL.len(),
            TaskKind::EditClassification => 1,
        }
    }
}

/// Content hash of the kind and the ordered pairs, so creating the same task
/// twice yields the same id.
pub fn task_id(kind: TaskKind, pairs: &[SampledPair]) -> String {
    let canonical = serde_json::to_vec(&(kind, pairs)).expect("pairs serialize");
    let digest = Sha256::digest(&canonical);
    hex::encode(&digest[..8])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingRecord {
    pub rater_id: String,
    pub pair_id: String,
    pub metric: Metric,
    pub score: u8,
    pub timestamp: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EditLabelRecord {
    pub rater_id: String,
    pub pair_id: String,
    pub category: EditCategory,
    pub timestamp: DateTime<Utc>,
}

/// One line of a task log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LogEntry {
    Rating(RatingRecord),
    EditLabel(EditLabelRecord),
}

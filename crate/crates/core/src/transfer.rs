//! The unit that flows through the pipeline: one source sentence and what
//! happened to it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::segment::{word_count, SentenceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectReason {
    PerplexityOutOfRange,
    OriginalTooShort,
    Redundant,
    BackendFailure,
    NumericLoss,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::PerplexityOutOfRange => "perplexity_out_of_range",
            RejectReason::OriginalTooShort => "original_too_short",
            RejectReason::Redundant => "redundant",
            RejectReason::BackendFailure => "backend_failure",
            RejectReason::NumericLoss => "numeric_loss",
        }
    }
}

impl FromStr for RejectReason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "perplexity_out_of_range" => RejectReason::PerplexityOutOfRange,
            "original_too_short" => RejectReason::OriginalTooShort,
            "redundant" => RejectReason::Redundant,
            "backend_failure" => RejectReason::BackendFailure,
            "numeric_loss" => RejectReason::NumericLoss,
            other => return Err(format!("unknown rejection reason `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pending,
    Scored,
    Accepted,
    Rejected(RejectReason),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pending => f.write_str("pending"),
            Status::Scored => f.write_str("scored"),
            Status::Accepted => f.write_str("accepted"),
            Status::Rejected(reason) => write!(f, "rejected:{}", reason.as_str()),
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pending" => Ok(Status::Pending),
            "scored" => Ok(Status::Scored),
            "accepted" => Ok(Status::Accepted),
            _ => match s.strip_prefix("rejected:") {
                Some(reason) => Ok(Status::Rejected(reason.parse()?)),
                None => Err(format!("unknown status `{s}`")),
            },
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferRecord {
    pub context_id: String,
    pub sentence_index: usize,
    pub original: String,
    pub original_word_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<Vec<String>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "crate::text::sig6::option::serialize"
    )]
    pub perplexity: Option<f64>,
    pub status: Status,
    /// Backend or scorer error message, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TransferRecord {
    pub fn pending(context_id: impl Into<String>, sentence_index: usize, original: impl Into<String>) -> Self {
        let original = original.into();
        TransferRecord {
            context_id: context_id.into(),
            sentence_index,
            original_word_count: word_count(&original),
            original,
            candidate: None,
            perplexity: None,
            status: Status::Pending,
            error: None,
        }
    }

    pub fn from_span(span: &SentenceSpan) -> Self {
        TransferRecord::pending(span.context_id.clone(), span.index, span.text.clone())
    }

    /// Stable identifier of the (original, candidate) pair.
    pub fn pair_id(&self) -> String {
        format!("{}#{}", self.context_id, self.sentence_index)
    }

    /// Candidate sentences joined by single spaces.
    pub fn joined_candidate(&self) -> Option<String> {
        self.candidate.as_ref().map(|c| c.join(" "))
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self.status, Status::Rejected(_))
    }

    pub fn reject(&mut self, reason: RejectReason) {
        self.status = Status::Rejected(reason);
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.status = Status::Rejected(RejectReason::BackendFailure);
        self.error = Some(message.into());
    }
}

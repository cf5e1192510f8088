//! Split-and-rephrase transfer through pluggable backends.

use std::collections::BTreeMap;

use crate::backend::{exchange, InProcess, SimplifyReply, Transport, TransportError, WireRequest};
use crate::segment::{numeric_tokens, word_count};
use crate::transfer::{Status, TransferRecord};

const CONNECTIVE: &str = ", and ";
const MIN_SIDE_WORDS: usize = 3;

/// Deterministic reference splitter: at the first ", and " with at least
/// three word tokens on each side, returns the left clause closed with a
/// period and the right clause capitalized. Otherwise returns the sentence.
pub fn rule_split(sentence: &str) -> Vec<String> {
    let Some(at) = sentence.find(CONNECTIVE) else {
        return vec![sentence.to_string()];
    };
    let left = sentence[..at].trim();
    let right = sentence[at + CONNECTIVE.len()..].trim();
    if word_count(left) < MIN_SIDE_WORDS || word_count(right) < MIN_SIDE_WORDS {
        return vec![sentence.to_string()];
    }
    let mut chars = right.chars();
    let first = chars.next().expect("right side has words");
    let right: String = first.to_uppercase().chain(chars).collect();
    vec![format!("{left}."), right]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCheck {
    pub missing: BTreeMap<String, usize>,
}

impl NumericCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Every numeric token of `original` must survive, with multiplicity, in the
/// joined candidate.
pub fn check_numeric_preservation<S: AsRef<str>>(original: &str, candidate: &[S]) -> NumericCheck {
    let joined = candidate
        .iter()
        .map(AsRef::as_ref)
        .collect::<Vec<_>>()
        .join(" ");
    let available = numeric_tokens(&joined);
    let missing = numeric_tokens(original)
        .into_iter()
        .filter_map(|(token, need)| {
            let have = available.get(&token).copied().unwrap_or(0);
            (need > have).then(|| (token, need - have))
        })
        .collect();
    NumericCheck { missing }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinBackend {
    Identity,
    RuleSplit,
}

impl BuiltinBackend {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinBackend::Identity => "builtin:identity",
            BuiltinBackend::RuleSplit => "builtin:rule_split",
        }
    }

    pub fn simplify(self, sentence: &str) -> Vec<String> {
        match self {
            BuiltinBackend::Identity => vec![sentence.to_string()],
            BuiltinBackend::RuleSplit => rule_split(sentence),
        }
    }

    pub fn transport(self) -> impl Transport {
        InProcess::new(self.name(), move |line: &str| {
            let reply = match serde_json::from_str::<WireRequest>(line) {
                Ok(request) => SimplifyReply::Simplified {
                    sentences: self.simplify(&request.text),
                    id: request.id,
                },
                Err(e) => SimplifyReply::Failed {
                    id: String::new(),
                    error: e.to_string(),
                },
            };
            serde_json::to_string(&reply).expect("reply serializes")
        })
    }
}

/// Result of one transfer run. When `interrupted` is set, records that were
/// still waiting for a reply are marked `backend_failure`; `answered` tells
/// them apart from records the backend explicitly failed.
#[derive(Debug)]
pub struct BatchOutcome {
    pub answered: Vec<bool>,
    pub interrupted: Option<TransportError>,
}

/// Sends every pending record to the backend and stores its candidate.
/// Output order is input order whatever order replies arrive in.
pub fn simplify_batch(
    records: &mut [TransferRecord],
    transport: &mut dyn Transport,
    in_flight_limit: usize,
) -> BatchOutcome {
    simplify_batch_with(records, transport, in_flight_limit, |_, _| {})
}

/// Like [`simplify_batch`], calling `on_done(index, record)` as each reply
/// is applied.
pub fn simplify_batch_with<F>(
    records: &mut [TransferRecord],
    transport: &mut dyn Transport,
    in_flight_limit: usize,
    mut on_done: F,
) -> BatchOutcome
where
    F: FnMut(usize, &TransferRecord),
{
    let targets: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].status == Status::Pending && records[i].candidate.is_none())
        .collect();
    let requests: Vec<WireRequest> = targets
        .iter()
        .map(|&i| WireRequest {
            id: i.to_string(),
            text: records[i].original.clone(),
        })
        .collect();
    let mut answered = vec![false; records.len()];
    let result = exchange::<SimplifyReply, _>(transport, &requests, in_flight_limit, |k, reply| {
        let index = targets[k];
        let record = &mut records[index];
        match reply {
            SimplifyReply::Simplified { sentences, .. } if !sentences.is_empty() => {
                record.candidate = Some(sentences);
            }
            SimplifyReply::Simplified { .. } => record.fail("backend returned no sentences"),
            SimplifyReply::Failed { error, .. } => record.fail(error),
        }
        answered[index] = true;
        on_done(index, record);
    });
    let interrupted = result.err();
    if let Some(err) = &interrupted {
        for &i in &targets {
            if !answered[i] {
                records[i].fail(err.to_string());
            }
        }
    }
    BatchOutcome {
        answered,
        interrupted,
    }
}

//! Rebuilds contexts from accepted candidates and recovers answer offsets.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::normalize_sentences;
use crate::corpus::{Answer, Article, Context, Corpus, QaPair};
use crate::segment::SentenceSpan;
use crate::text::{char_slice, find_chars_by, fold_case, fold_char};
use crate::transfer::{Status, TransferRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("context `{context_id}` has no sentence {index} (it has {count})")]
    IndexOutOfRange {
        context_id: String,
        index: usize,
        count: usize,
    },
    #[error("record for context `{0}` does not belong to the corpus")]
    UnknownContext(String),
    #[error("no rebuilt text for context `{0}`")]
    MissingContext(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Replaced by this many candidate sentences.
    Replaced(usize),
    KeptOriginal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RebuiltContext {
    pub context_id: String,
    pub text: String,
    pub provenance: Vec<Provenance>,
}

/// Joins each sentence's accepted candidate, or the original sentence when
/// there is none, with single spaces.
pub fn rebuild_context(
    context_id: &str,
    spans: &[SentenceSpan],
    accepted: &[&TransferRecord],
) -> Result<RebuiltContext, ReconstructError> {
    let mut replacement: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for record in accepted {
        if record.sentence_index >= spans.len() {
            return Err(ReconstructError::IndexOutOfRange {
                context_id: context_id.to_string(),
                index: record.sentence_index,
                count: spans.len(),
            });
        }
        let sentences = normalize_sentences(record.candidate.clone().unwrap_or_default());
        if !sentences.is_empty() {
            replacement.insert(record.sentence_index, sentences);
        }
    }
    let mut pieces = Vec::with_capacity(spans.len());
    let mut provenance = Vec::with_capacity(spans.len());
    for (index, span) in spans.iter().enumerate() {
        match replacement.remove(&index) {
            Some(sentences) => {
                provenance.push(Provenance::Replaced(sentences.len()));
                pieces.push(sentences.join(" "));
            }
            None => {
                provenance.push(Provenance::KeptOriginal);
                pieces.push(span.text.clone());
            }
        }
    }
    Ok(RebuiltContext {
        context_id: context_id.to_string(),
        text: pieces.join(" "),
        provenance,
    })
}

/// Rebuilds every context of `corpus` from its spans and the accepted
/// records among `records`.
pub fn rebuild_corpus(
    corpus: &Corpus,
    spans: &[SentenceSpan],
    records: &[TransferRecord],
) -> Result<Vec<RebuiltContext>, ReconstructError> {
    let mut spans_by_context: HashMap<&str, Vec<SentenceSpan>> = HashMap::new();
    for span in spans {
        spans_by_context
            .entry(span.context_id.as_str())
            .or_default()
            .push(span.clone());
    }
    let mut accepted: HashMap<&str, Vec<&TransferRecord>> = HashMap::new();
    for record in records.iter().filter(|r| r.status == Status::Accepted) {
        if !spans_by_context.contains_key(record.context_id.as_str()) {
            return Err(ReconstructError::UnknownContext(record.context_id.clone()));
        }
        accepted.entry(record.context_id.as_str()).or_default().push(record);
    }
    corpus
        .contexts()
        .map(|context| {
            let mut spans = spans_by_context.remove(context.id.as_str()).unwrap_or_default();
            spans.sort_by_key(|s| s.index);
            let chosen = accepted.remove(context.id.as_str()).unwrap_or_default();
            rebuild_context(&context.id, &spans, &chosen)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchKind {
    Exact,
    CaseInsensitive,
    Unmatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OffsetMatch {
    pub offset: Option<usize>,
    pub kind: MatchKind,
}

/// Leftmost exact occurrence anywhere in the context, else leftmost
/// occurrence under simple case folding.
pub fn find_offset(context_text: &str, answer_text: &str) -> OffsetMatch {
    if answer_text.is_empty() {
        return OffsetMatch {
            offset: None,
            kind: MatchKind::Unmatched,
        };
    }
    if let Some(offset) = find_chars_by(context_text, answer_text, |c| c) {
        return OffsetMatch {
            offset: Some(offset),
            kind: MatchKind::Exact,
        };
    }
    match find_chars_by(context_text, answer_text, fold_char) {
        Some(offset) => OffsetMatch {
            offset: Some(offset),
            kind: MatchKind::CaseInsensitive,
        },
        None => OffsetMatch {
            offset: None,
            kind: MatchKind::Unmatched,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetResult {
    pub qa_id: String,
    pub offset: Option<usize>,
    pub match_kind: MatchKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    /// The answer no longer occurs in the rebuilt context.
    UnmatchedAnswer,
    /// The answer could not be located in the source context either.
    UnmatchedOriginalAnswer,
    NoAnswer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedQuestion {
    pub id: String,
    pub reason: DropReason,
}

#[derive(Debug, Clone)]
pub struct FinalizedDatasets {
    pub simple: Corpus,
    pub original_paired: Corpus,
    pub drops: Vec<DroppedQuestion>,
    pub offsets: Vec<OffsetResult>,
}

fn answer_at(context_text: &str, answer: &Answer) -> Option<Answer> {
    let offset = answer.char_offset?;
    let len = answer.text.chars().count();
    let found = char_slice(context_text, offset, offset + len);
    if found.chars().count() != len {
        return None;
    }
    if found == answer.text {
        return Some(Answer::exact(answer.text.clone(), offset));
    }
    (answer.case_insensitive && fold_case(found) == fold_case(&answer.text)).then(|| answer.clone())
}

fn located(text: &str, m: OffsetMatch) -> Option<Answer> {
    m.offset.map(|offset| Answer {
        text: text.to_string(),
        char_offset: Some(offset),
        case_insensitive: m.kind == MatchKind::CaseInsensitive,
    })
}

/// Builds the simplified corpus and the original corpus restricted to the
/// same questions. Only the first answer of each question is carried over.
pub fn finalize_datasets(
    source: &Corpus,
    rebuilt: &[RebuiltContext],
) -> Result<FinalizedDatasets, ReconstructError> {
    let by_id: HashMap<&str, &RebuiltContext> = rebuilt.iter().map(|r| (r.context_id.as_str(), r)).collect();
    let mut drops = Vec::new();
    let mut offsets = Vec::new();
    let mut simple_articles = Vec::with_capacity(source.articles.len());
    let mut original_articles = Vec::with_capacity(source.articles.len());
    for article in &source.articles {
        let mut simple_contexts = Vec::with_capacity(article.contexts.len());
        let mut original_contexts = Vec::with_capacity(article.contexts.len());
        for context in &article.contexts {
            let rebuilt = by_id
                .get(context.id.as_str())
                .ok_or_else(|| ReconstructError::MissingContext(context.id.clone()))?;
            let mut simple_qas = Vec::new();
            let mut original_qas = Vec::new();
            for qa in &context.qa_pairs {
                let Some(answer) = qa.answers.first() else {
                    drops.push(DroppedQuestion {
                        id: qa.id.clone(),
                        reason: DropReason::NoAnswer,
                    });
                    continue;
                };
                let m = find_offset(&rebuilt.text, &answer.text);
                offsets.push(OffsetResult {
                    qa_id: qa.id.clone(),
                    offset: m.offset,
                    match_kind: m.kind,
                });
                let Some(simple_answer) = located(&answer.text, m) else {
                    drops.push(DroppedQuestion {
                        id: qa.id.clone(),
                        reason: DropReason::UnmatchedAnswer,
                    });
                    continue;
                };
                let original_answer = answer_at(&context.text, answer)
                    .or_else(|| located(&answer.text, find_offset(&context.text, &answer.text)));
                let Some(original_answer) = original_answer else {
                    drops.push(DroppedQuestion {
                        id: qa.id.clone(),
                        reason: DropReason::UnmatchedOriginalAnswer,
                    });
                    continue;
                };
                let with_answer = |answer: Answer| QaPair {
                    id: qa.id.clone(),
                    question: qa.question.clone(),
                    answers: vec![answer],
                };
                simple_qas.push(with_answer(simple_answer));
                original_qas.push(with_answer(original_answer));
            }
            simple_contexts.push(Context {
                id: context.id.clone(),
                text: rebuilt.text.clone(),
                qa_pairs: simple_qas,
            });
            original_contexts.push(Context {
                id: context.id.clone(),
                text: context.text.clone(),
                qa_pairs: original_qas,
            });
        }
        simple_articles.push(Article {
            title: article.title.clone(),
            contexts: simple_contexts,
        });
        original_articles.push(Article {
            title: article.title.clone(),
            contexts: original_contexts,
        });
    }
    Ok(FinalizedDatasets {
        simple: Corpus {
            version: source.version.clone(),
            articles: simple_articles,
        },
        original_paired: Corpus {
            version: source.version.clone(),
            articles: original_articles,
        },
        drops,
        offsets,
    })
}

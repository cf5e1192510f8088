//! Object model for span-based QA corpora and the SQuAD-style JSON schema.
//!
//! Answer offsets count Unicode scalar values from the start of the context,
//! which is what SQuAD-trained readers expect.

use std::collections::HashSet;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{char_slice, fold_case};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed corpus at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("duplicate question id(s): {}", .0.join(", "))]
    DuplicateIds(Vec<String>),
    #[error("invalid corpus: {0}")]
    Invalid(String),
    #[error("refusing to emit: answer offset of question `{qa_id}` does not match its text")]
    OffsetMismatch { qa_id: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub version: String,
    pub articles: Vec<Article>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Article {
    pub title: String,
    pub contexts: Vec<Context>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    /// Positional id (`"{article}:{paragraph}"`); not part of the wire schema.
    pub id: String,
    pub text: String,
    pub qa_pairs: Vec<QaPair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaPair {
    pub id: String,
    pub question: String,
    pub answers: Vec<Answer>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    pub text: String,
    /// Offset in Unicode scalar values.
    pub char_offset: Option<usize>,
    /// The offset was located by case-insensitive matching.
    pub case_insensitive: bool,
}

impl Answer {
    pub fn exact(text: impl Into<String>, char_offset: usize) -> Self {
        Answer {
            text: text.into(),
            char_offset: Some(char_offset),
            case_insensitive: false,
        }
    }
}

pub fn context_id(article: usize, paragraph: usize) -> String {
    format!("{article}:{paragraph}")
}

impl Corpus {
    pub fn contexts(&self) -> impl Iterator<Item = &Context> {
        self.articles.iter().flat_map(|a| a.contexts.iter())
    }

    pub fn qa_pairs(&self) -> impl Iterator<Item = (&Context, &QaPair)> {
        self.contexts()
            .flat_map(|c| c.qa_pairs.iter().map(move |qa| (c, qa)))
    }

    pub fn question_count(&self) -> usize {
        self.qa_pairs().count()
    }

    pub fn question_ids(&self) -> Vec<&str> {
        self.qa_pairs().map(|(_, qa)| qa.id.as_str()).collect()
    }

    /// Reassigns positional context ids.
    pub fn renumber_contexts(&mut self) {
        for (ai, article) in self.articles.iter_mut().enumerate() {
            for (pi, context) in article.contexts.iter_mut().enumerate() {
                context.id = context_id(ai, pi);
            }
        }
    }
}

// Wire schema.

#[derive(Serialize, Deserialize)]
struct WireCorpus {
    version: String,
    data: Vec<WireArticle>,
}

#[derive(Serialize, Deserialize)]
struct WireArticle {
    title: String,
    paragraphs: Vec<WireParagraph>,
}

#[derive(Serialize, Deserialize)]
struct WireParagraph {
    context: String,
    qas: Vec<WireQa>,
}

#[derive(Serialize, Deserialize)]
struct WireQa {
    id: String,
    question: String,
    answers: Vec<WireAnswer>,
}

#[derive(Serialize, Deserialize)]
struct WireAnswer {
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    answer_start: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    case_insensitive: bool,
}

pub fn load_corpus<R: Read>(reader: R) -> Result<Corpus, CorpusError> {
    let mut de = serde_json::Deserializer::from_reader(reader);
    let wire: WireCorpus = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        CorpusError::Parse {
            path,
            message: err.into_inner().to_string(),
        }
    })?;
    from_wire(wire)
}

pub fn load_corpus_str(json: &str) -> Result<Corpus, CorpusError> {
    load_corpus(json.as_bytes())
}

fn from_wire(wire: WireCorpus) -> Result<Corpus, CorpusError> {
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    let mut articles = Vec::with_capacity(wire.data.len());
    for (ai, article) in wire.data.into_iter().enumerate() {
        if article.paragraphs.is_empty() {
            return Err(CorpusError::Invalid(format!(
                "article {ai} (`{}`) has no paragraphs",
                article.title
            )));
        }
        let mut contexts = Vec::with_capacity(article.paragraphs.len());
        for (pi, paragraph) in article.paragraphs.into_iter().enumerate() {
            if paragraph.context.is_empty() {
                return Err(CorpusError::Invalid(format!(
                    "data[{ai}].paragraphs[{pi}].context is empty"
                )));
            }
            let mut qa_pairs = Vec::with_capacity(paragraph.qas.len());
            for qa in paragraph.qas {
                if !seen.insert(qa.id.clone()) && !duplicates.contains(&qa.id) {
                    duplicates.push(qa.id.clone());
                }
                if qa.answers.is_empty() {
                    return Err(CorpusError::Invalid(format!(
                        "question `{}` has no answers",
                        qa.id
                    )));
                }
                qa_pairs.push(QaPair {
                    id: qa.id,
                    question: qa.question,
                    answers: qa
                        .answers
                        .into_iter()
                        .map(|a| Answer {
                            text: a.text,
                            char_offset: a.answer_start,
                            case_insensitive: a.case_insensitive,
                        })
                        .collect(),
                });
            }
            contexts.push(Context {
                id: context_id(ai, pi),
                text: paragraph.context,
                qa_pairs,
            });
        }
        articles.push(Article {
            title: article.title,
            contexts,
        });
    }
    if !duplicates.is_empty() {
        return Err(CorpusError::DuplicateIds(duplicates));
    }
    Ok(Corpus {
        version: wire.version,
        articles,
    })
}

fn to_wire(corpus: &Corpus) -> WireCorpus {
    WireCorpus {
        version: corpus.version.clone(),
        data: corpus
            .articles
            .iter()
            .map(|article| WireArticle {
                title: article.title.clone(),
                paragraphs: article
                    .contexts
                    .iter()
                    .map(|context| WireParagraph {
                        context: context.text.clone(),
                        qas: context
                            .qa_pairs
                            .iter()
                            .map(|qa| WireQa {
                                id: qa.id.clone(),
                                question: qa.question.clone(),
                                answers: qa
                                    .answers
                                    .iter()
                                    .map(|a| WireAnswer {
                                        text: a.text.clone(),
                                        answer_start: a.char_offset,
                                        case_insensitive: a.case_insensitive,
                                    })
                                    .collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Writes the corpus in the external schema. Refuses corpora whose offsets
/// do not validate.
pub fn emit_corpus<W: Write>(corpus: &Corpus, writer: W) -> Result<(), CorpusError> {
    let report = validate_offsets(corpus);
    if let Some(failure) = report.failures.first() {
        return Err(CorpusError::OffsetMismatch {
            qa_id: failure.qa_id.clone(),
        });
    }
    let mut writer = writer;
    serde_json::to_writer(&mut writer, &to_wire(corpus))
        .map_err(|e| CorpusError::Io(e.into()))?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn emit_corpus_string(corpus: &Corpus) -> Result<String, CorpusError> {
    let mut buf = Vec::new();
    emit_corpus(corpus, &mut buf)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffsetFailure {
    pub qa_id: String,
    pub answer_index: usize,
    pub expected: String,
    pub found: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub questions: usize,
    pub answers_checked: usize,
    pub passed: usize,
    pub failures: Vec<OffsetFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every answer carrying an offset against its context text.
pub fn validate_offsets(corpus: &Corpus) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (context, qa) in corpus.qa_pairs() {
        report.questions += 1;
        let context_len = context.text.chars().count();
        let mut qa_ok = true;
        for (index, answer) in qa.answers.iter().enumerate() {
            let Some(offset) = answer.char_offset else {
                continue;
            };
            report.answers_checked += 1;
            let answer_len = answer.text.chars().count();
            let failure = |found: String, reason: &str| OffsetFailure {
                qa_id: qa.id.clone(),
                answer_index: index,
                expected: answer.text.clone(),
                found,
                reason: reason.to_string(),
            };
            if offset + answer_len > context_len {
                report.failures.push(failure(
                    char_slice(&context.text, offset.min(context_len), context_len).to_string(),
                    "offset out of range",
                ));
                qa_ok = false;
                continue;
            }
            let found = char_slice(&context.text, offset, offset + answer_len);
            let matches = if answer.case_insensitive {
                fold_case(found) == fold_case(&answer.text)
            } else {
                found == answer.text
            };
            if !matches {
                report
                    .failures
                    .push(failure(found.to_string(), "substring mismatch"));
                qa_ok = false;
            }
        }
        if qa_ok {
            report.passed += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn minimal_json() -> &'static str {
        r#"{"version":"1.1","data":[{"title":"Paris","paragraphs":[{"context":"Paris is nice.","qas":[{"id":"q1","question":"Which city?","answers":[{"text":"Paris","answer_start":0}]}]}]}]}"#
    }

    #[test]
    fn loads_minimal_document() {
        let corpus = load_corpus_str(minimal_json()).unwrap();
        assert_eq!(corpus.articles.len(), 1);
        assert_eq!(corpus.articles[0].contexts.len(), 1);
        assert_eq!(corpus.question_count(), 1);
        assert_eq!(corpus.articles[0].contexts[0].id, "0:0");
        assert_eq!(
            corpus.articles[0].contexts[0].qa_pairs[0].answers[0],
            Answer::exact("Paris", 0)
        );
    }

    #[test]
    fn duplicate_ids_are_named() {
        let json = r#"{"version":"1.1","data":[{"title":"Paris","paragraphs":[{"context":"Paris is nice.","qas":[
            {"id":"q1","question":"a?","answers":[{"text":"Paris","answer_start":0}]},
            {"id":"q1","question":"b?","answers":[{"text":"nice","answer_start":9}]}]}]}]}"#;
        let err = load_corpus_str(json).unwrap_err();
        assert!(matches!(&err, CorpusError::DuplicateIds(ids) if ids == &["q1".to_string()]));
        assert!(err.to_string().contains("q1"));
    }

    #[test]
    fn parse_error_names_json_path() {
        let json = r#"{"version":"1.1","data":[{"title":"P","paragraphs":[{"context":"x","qas":[{"id":"q1","question":"?","answers":[{"text":"x","answer_start":"zero"}]}]}]}]}"#;
        match load_corpus_str(json).unwrap_err() {
            CorpusError::Parse { path, .. } => {
                assert_eq!(path, "data[0].paragraphs[0].qas[0].answers[0].answer_start")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_structural_identity() {
        let corpus = load_corpus_str(minimal_json()).unwrap();
        let emitted = emit_corpus_string(&corpus).unwrap();
        assert_eq!(load_corpus_str(&emitted).unwrap(), corpus);
    }

    #[test]
    fn empty_article_list_emits_valid_document() {
        let corpus = Corpus {
            version: "1.1".into(),
            articles: vec![],
        };
        let emitted = emit_corpus_string(&corpus).unwrap();
        assert_eq!(emitted.trim(), r#"{"version":"1.1","data":[]}"#);
        assert_eq!(load_corpus_str(&emitted).unwrap(), corpus);
    }

    #[test]
    fn emission_refuses_mismatched_offset() {
        let mut corpus = load_corpus_str(minimal_json()).unwrap();
        corpus.articles[0].contexts[0].qa_pairs[0].answers[0] = Answer::exact("nice", 0);
        match emit_corpus_string(&corpus).unwrap_err() {
            CorpusError::OffsetMismatch { qa_id } => assert_eq!(qa_id, "q1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_reports_expected_and_found() {
        let mut corpus = load_corpus_str(minimal_json()).unwrap();
        assert!(validate_offsets(&corpus).is_ok());

        corpus.articles[0].contexts[0].qa_pairs[0].answers[0] = Answer::exact("nice", 0);
        let report = validate_offsets(&corpus);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].expected, "nice");
        assert_eq!(report.failures[0].found, "Pari");

        corpus.articles[0].contexts[0].qa_pairs[0].answers[0] = Answer {
            text: "paris".into(),
            char_offset: Some(0),
            case_insensitive: true,
        };
        assert!(validate_offsets(&corpus).is_ok());
    }

    #[test]
    fn offsets_count_scalar_values_not_bytes() {
        let json = r#"{"version":"1.1","data":[{"title":"C","paragraphs":[{"context":"Café société: Zürich is big.","qas":[{"id":"q","question":"?","answers":[{"text":"Zürich","answer_start":14}]}]}]}]}"#;
        let corpus = load_corpus_str(json).unwrap();
        assert!(validate_offsets(&corpus).is_ok());
    }

    #[test]
    fn out_of_range_offset_fails() {
        let json = r#"{"version":"1.1","data":[{"title":"C","paragraphs":[{"context":"short","qas":[{"id":"q","question":"?","answers":[{"text":"short text","answer_start":3}]}]}]}]}"#;
        let report = validate_offsets(&load_corpus_str(json).unwrap());
        assert_eq!(report.failures[0].reason, "offset out of range");
    }
}

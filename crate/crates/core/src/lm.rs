//! Deterministic stand-in for a neural perplexity scorer: a unigram model
//! with add-one smoothing, fitted on a bundled 10k-sentence corpus.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::backend::{InProcess, ScoreReply, Transport, WireRequest};
use crate::segment::tokenize_words;

pub const BUNDLED_CORPUS: &str = include_str!("../data/lm_fixture.txt");

#[derive(Debug, Clone)]
pub struct UnigramModel {
    counts: HashMap<String, u64>,
    total: u64,
    /// Observed types plus one slot for unseen tokens.
    vocabulary: u64,
}

fn lm_tokens(text: &str) -> impl Iterator<Item = String> {
    tokenize_words(text).into_iter().map(|t| t.text.to_lowercase())
}

impl UnigramModel {
    pub fn fit<'a>(sentences: impl IntoIterator<Item = &'a str>) -> Self {
        let mut counts = HashMap::new();
        let mut total = 0;
        for sentence in sentences {
            for token in lm_tokens(sentence) {
                *counts.entry(token).or_insert(0) += 1;
                total += 1;
            }
        }
        let vocabulary = counts.len() as u64 + 1;
        UnigramModel {
            counts,
            total,
            vocabulary,
        }
    }

    pub fn bundled() -> &'static UnigramModel {
        static MODEL: OnceLock<UnigramModel> = OnceLock::new();
        MODEL.get_or_init(|| UnigramModel::fit(BUNDLED_CORPUS.lines()))
    }

    pub fn probability(&self, token: &str) -> f64 {
        let count = self.counts.get(token).copied().unwrap_or(0);
        (count + 1) as f64 / (self.total + self.vocabulary) as f64
    }

    /// `2^H` with `H` the mean per-token cross-entropy in bits; `None` for
    /// text without tokens.
    pub fn perplexity(&self, text: &str) -> Option<f64> {
        let mut bits = 0.0;
        let mut n = 0usize;
        for token in lm_tokens(text) {
            bits -= self.probability(&token).log2();
            n += 1;
        }
        (n > 0).then(|| (bits / n as f64).exp2())
    }
}

pub const STUB_SCORER: &str = "builtin:stub";

/// The bundled model behind the scorer wire protocol.
pub fn stub_scorer() -> impl Transport {
    let model = UnigramModel::bundled();
    InProcess::new(STUB_SCORER, move |line: &str| {
        let reply = match serde_json::from_str::<WireRequest>(line) {
            Ok(req) => match model.perplexity(&req.text) {
                Some(p) => ScoreReply { id: req.id, perplexity: Some(p), error: None },
                None => ScoreReply { id: req.id, perplexity: None, error: Some("empty text".into()) },
            },
            Err(e) => ScoreReply { id: String::new(), perplexity: None, error: Some(e.to_string()) },
        };
        serde_json::to_string(&reply).expect("reply serializes")
    })
}

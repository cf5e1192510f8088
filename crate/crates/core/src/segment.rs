//! Rule-based sentence segmentation and word tokenization.
//!
//! A sentence ends at `.`, `!` or `?` (optionally followed by closing quotes
//! or brackets) when the next character is whitespace or the end of the text.
//! A period does not end a sentence when the token it closes is a known
//! abbreviation, a single capital initial, or sits between two digits.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::corpus::Context;

pub const DEFAULT_ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub context_id: String,
    pub index: usize,
    pub text: String,
    /// Char offset of the first character.
    pub start: usize,
    /// Char offset one past the last character.
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub is_numeric: bool,
}

impl Token {
    fn new(text: String) -> Self {
        let is_numeric = is_numeric(&text);
        Token { text, is_numeric }
    }

    /// False for punctuation-only tokens.
    pub fn is_word(&self) -> bool {
        self.text.chars().any(char::is_alphanumeric)
    }
}

/// Parses an abbreviation list: one entry per line, `#` starts a comment.
pub fn parse_abbreviations(list: &str) -> Vec<String> {
    list.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|entry| !entry.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Debug, Clone)]
pub struct Segmenter {
    abbreviations: HashSet<String>,
}

impl Default for Segmenter {
    fn default() -> Self {
        Segmenter::with_abbreviations(parse_abbreviations(DEFAULT_ABBREVIATIONS))
    }
}

const TERMINATORS: [char; 3] = ['.', '!', '?'];
const CLOSERS: [char; 8] = ['"', '\'', '”', '’', ')', ']', '}', '»'];
const OPENERS: [char; 7] = ['"', '\'', '“', '‘', '(', '[', '«'];

impl Segmenter {
    pub fn with_abbreviations<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Segmenter {
            abbreviations: entries
                .into_iter()
                .map(|e| e.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn extend<I, S>(&mut self, entries: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.abbreviations
            .extend(entries.into_iter().map(|e| e.as_ref().to_lowercase()));
    }

    pub fn is_abbreviation(&self, token: &str) -> bool {
        self.abbreviations.contains(&token.to_lowercase())
    }

    pub fn segment_context(&self, context: &Context) -> Vec<SentenceSpan> {
        self.segment(&context.id, &context.text)
    }

    pub fn segment(&self, context_id: &str, text: &str) -> Vec<SentenceSpan> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let byte_at = |ci: usize| chars.get(ci).map_or(text.len(), |&(b, _)| b);
        let mut spans = Vec::new();
        let mut push = |start: usize, end: usize| {
            spans.push(SentenceSpan {
                context_id: context_id.to_string(),
                index: spans.len(),
                text: text[byte_at(start)..byte_at(end)].to_string(),
                start,
                end,
            });
        };

        let mut start: Option<usize> = None;
        let mut last_non_ws = 0;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i].1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if start.is_none() {
                start = Some(i);
            }
            last_non_ws = i;
            if !TERMINATORS.contains(&c) {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < chars.len() && (TERMINATORS.contains(&chars[j].1) || CLOSERS.contains(&chars[j].1)) {
                j += 1;
            }
            let at_break = j == chars.len() || chars[j].1.is_whitespace();
            if at_break && !(c == '.' && self.period_is_guarded(&chars, i)) {
                push(start.take().expect("sentence started"), j);
            }
            last_non_ws = j - 1;
            i = j;
        }
        if let Some(s) = start {
            push(s, last_non_ws + 1);
        }
        spans
    }

    /// `period` is the char index of a '.' followed by whitespace or end.
    fn period_is_guarded(&self, chars: &[(usize, char)], period: usize) -> bool {
        let prev_digit = period > 0 && chars[period - 1].1.is_ascii_digit();
        let next_digit = chars.get(period + 1).is_some_and(|&(_, c)| c.is_ascii_digit());
        if prev_digit && next_digit {
            return true;
        }
        let mut word_start = period;
        while word_start > 0 && !chars[word_start - 1].1.is_whitespace() {
            word_start -= 1;
        }
        let token: String = chars[word_start..=period]
            .iter()
            .map(|&(_, c)| c)
            .skip_while(|c| OPENERS.contains(c))
            .collect();
        if self.is_abbreviation(&token) {
            return true;
        }
        let mut letters = token.chars();
        matches!(
            (letters.next(), letters.next(), letters.next()),
            (Some(l), Some('.'), None) if l.is_uppercase()
        )
    }
}

fn default_segmenter() -> &'static Segmenter {
    static SEGMENTER: OnceLock<Segmenter> = OnceLock::new();
    SEGMENTER.get_or_init(Segmenter::default)
}

/// Segments a context with the default abbreviation list.
pub fn segment_sentences(context: &Context) -> Vec<SentenceSpan> {
    default_segmenter().segment_context(context)
}

pub fn segment_text(text: &str) -> Vec<SentenceSpan> {
    default_segmenter().segment("", text)
}

/// Whitespace tokenization with leading and trailing punctuation split off
/// into one token per character.
pub fn tokenize_words(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let Some(first) = chunk.find(char::is_alphanumeric) else {
            tokens.extend(chunk.chars().map(|c| Token::new(c.to_string())));
            continue;
        };
        let last = chunk
            .char_indices()
            .filter(|(_, c)| c.is_alphanumeric())
            .map(|(i, c)| i + c.len_utf8())
            .next_back()
            .expect("chunk has an alphanumeric char");
        tokens.extend(chunk[..first].chars().map(|c| Token::new(c.to_string())));
        tokens.push(Token::new(chunk[first..last].to_string()));
        tokens.extend(chunk[last..].chars().map(|c| Token::new(c.to_string())));
    }
    tokens
}

/// Word tokens only (punctuation-only tokens removed).
pub fn word_tokens(text: &str) -> Vec<String> {
    tokenize_words(text)
        .into_iter()
        .filter(Token::is_word)
        .map(|t| t.text)
        .collect()
}

pub fn word_count(text: &str) -> usize {
    tokenize_words(text).iter().filter(|t| t.is_word()).count()
}

/// Digits, optionally joined by single `.`, `,`, `/`, `-` or `:` separators.
pub fn is_numeric(token: &str) -> bool {
    let core = token.trim_matches(|c: char| !c.is_alphanumeric());
    if core.is_empty() {
        return false;
    }
    let mut prev_digit = false;
    for c in core.chars() {
        if c.is_ascii_digit() {
            prev_digit = true;
        } else if matches!(c, '.' | ',' | '/' | '-' | ':') && prev_digit {
            prev_digit = false;
        } else {
            return false;
        }
    }
    prev_digit
}

/// Multiset of numeric tokens, as token text → count.
pub fn numeric_tokens(text: &str) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for token in tokenize_words(text).into_iter().filter(|t| t.is_numeric) {
        *counts.entry(token.text).or_insert(0) += 1;
    }
    counts
}

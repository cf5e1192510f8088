//! Flesch–Kincaid grade level.

use super::MetricError;
use crate::segment::{segment_text, tokenize_words};

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count: maximal vowel groups (`aeiouy`), minus one for
/// a terminal silent `e`, never below one. A final `le` after a consonant
/// keeps its syllable ("simple").
pub fn count_syllables(word: &str) -> Result<usize, MetricError> {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if letters.is_empty() {
        return Err(MetricError::NoLetters(word.to_string()));
    }
    let mut groups: usize = 0;
    let mut in_group = false;
    for &c in &letters {
        let vowel = is_vowel(c);
        if vowel && !in_group {
            groups += 1;
        }
        in_group = vowel;
    }
    let n = letters.len();
    if n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) {
        let consonant_le = letters[n - 2] == 'l' && n >= 3 && !is_vowel(letters[n - 3]);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    Ok(groups.max(1))
}

/// `0.39 * words/sentences + 11.8 * syllables/words - 15.59`.
///
/// Sentences and words follow the segmenter and tokenizer rules; word
/// tokens without letters (numbers) count as one syllable.
pub fn fkgl(text: &str) -> Result<f64, MetricError> {
    let words: Vec<String> = tokenize_words(text)
        .into_iter()
        .filter(|t| t.is_word())
        .map(|t| t.text)
        .collect();
    if words.is_empty() {
        return Err(MetricError::NoWords);
    }
    let sentences = segment_text(text).len().max(1);
    let syllables: usize = words
        .iter()
        .map(|w| count_syllables(w).unwrap_or(1))
        .sum();
    let n_words = words.len() as f64;
    Ok(0.39 * (n_words / sentences as f64) + 11.8 * (syllables as f64 / n_words) - 15.59)
}

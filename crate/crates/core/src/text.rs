//! Character-indexed string helpers.

/// Substring by Unicode scalar indices `[start, end)`. Indices past the end
/// are clamped.
pub fn char_slice(s: &str, start: usize, end: usize) -> &str {
    let mut indices = s.char_indices().map(|(i, _)| i).chain(std::iter::once(s.len()));
    let start_byte = indices.by_ref().nth(start).unwrap_or(s.len());
    if end <= start {
        return &s[start_byte..start_byte];
    }
    let end_byte = indices.nth(end - start - 1).unwrap_or(s.len());
    &s[start_byte..end_byte]
}

/// Simple case folding: each scalar is lower-cased only when its lowercase
/// form is a single scalar, so folded strings keep their character count.
pub fn fold_char(c: char) -> char {
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

pub fn fold_case(s: &str) -> String {
    s.chars().map(fold_char).collect()
}

/// Char index of the leftmost occurrence of `needle` in `haystack`, comparing
/// characters through `map`.
pub fn find_chars_by(haystack: &str, needle: &str, map: impl Fn(char) -> char) -> Option<usize> {
    let hay: Vec<char> = haystack.chars().map(&map).collect();
    let pat: Vec<char> = needle.chars().map(&map).collect();
    if pat.is_empty() {
        return Some(0);
    }
    if pat.len() > hay.len() {
        return None;
    }
    hay.windows(pat.len()).position(|w| w == pat.as_slice())
}

/// Rounds to six significant digits; artifacts store floats this way so that
/// repeated runs are byte-identical.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

pub(crate) mod sig6 {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(super::round_sig6(*x))
    }

    pub mod option {
        use serde::Serializer;

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&super::super::round_sig6(*v)),
                None => s.serialize_none(),
            }
        }
    }
}

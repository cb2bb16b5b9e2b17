//! Text normalization: markup stripping, sentence splitting, tokenization.
//!
//! Issue descriptions mix prose with tracker markup (code blocks, URLs,
//! image references, header and table sigils). The lint and sentiment
//! pipelines work on prose only, so everything here operates on a
//! [`CleanText`] that remembers what was removed and where.
//!
//! All offsets in this module are character offsets (not bytes).

mod sentence;
mod strip;
mod token;

pub use sentence::{split_sentences, split_sentences_default, Sentence, DEFAULT_ABBREVIATIONS};
pub use strip::{strip_markup, CleanText, RegionKind, RemovedRegion};
pub use token::{tokenize, Token};

/// Number of characters in a string.
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Substring by character offsets. Clamps to the string's length.
pub fn char_slice(s: &str, start: usize, end: usize) -> String {
    s.chars().skip(start).take(end.saturating_sub(start)).collect()
}

/// Default cutoff above which texts are excluded from sentiment scoring.
/// Guards against log dumps and pasted tool output; configurable.
pub const DEFAULT_OVERLONG_LIMIT: usize = 10_000;

/// True iff the cleaned text is strictly longer than `limit` characters.
pub fn flag_overlong(clean: &CleanText, limit: usize) -> bool {
    assert!(limit > 0, "overlong limit must be positive");
    char_len(&clean.text) > limit
}

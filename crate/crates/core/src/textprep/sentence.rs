//! Rule-based sentence splitting with an abbreviation guard list.

use super::strip::CleanText;
use super::token::{tokenize, Token};

/// Abbreviations that must not end a sentence. Compared case-insensitively
/// against the word immediately before a terminal punctuation run.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "e.g", "i.e", "etc", "vs", "cf", "al", "approx", "ca", "resp", "incl",
];

/// One sentence of a [`CleanText`]. Offsets are character offsets into the
/// clean text; token offsets are absolute (into the clean text, not the
/// sentence).
#[derive(Debug, Clone)]
pub struct Sentence {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub tokens: Vec<Token>,
}

/// Split with the default abbreviation guard list.
pub fn split_sentences_default(clean: &CleanText) -> Vec<Sentence> {
    let guards: Vec<String> = DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect();
    split_sentences(clean, &guards)
}

/// Deterministic splitting on terminal punctuation (`.`, `!`, `?`) followed
/// by whitespace or end of text. A split is suppressed when the word ending
/// at the punctuation is in the guard list. Every non-whitespace character
/// lands in exactly one sentence.
pub fn split_sentences(clean: &CleanText, abbreviations: &[String]) -> Vec<Sentence> {
    let chars: Vec<char> = clean.text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = skip_ws(&chars, 0);

    let mut i = start;
    while i < chars.len() {
        if matches!(chars[i], '.' | '!' | '?') {
            // absorb the whole punctuation run
            let mut run_end = i + 1;
            while run_end < chars.len() && matches!(chars[run_end], '.' | '!' | '?') {
                run_end += 1;
            }
            let at_boundary = run_end == chars.len() || chars[run_end].is_whitespace();
            if at_boundary && !guarded(&chars, i, abbreviations) {
                push_sentence(clean, &chars, start, run_end, &mut sentences);
                start = skip_ws(&chars, run_end);
                i = start;
                continue;
            }
            i = run_end;
        } else {
            i += 1;
        }
    }
    if start < chars.len() {
        push_sentence(clean, &chars, start, chars.len(), &mut sentences);
    }
    sentences
}

fn skip_ws(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    i
}

/// The word immediately before the punctuation at `punct` is a guarded
/// abbreviation. The word may contain internal periods ("e.g"); leading
/// non-alphanumerics like an opening paren are trimmed before comparing.
fn guarded(chars: &[char], punct: usize, abbreviations: &[String]) -> bool {
    let mut w = punct;
    while w > 0 && !chars[w - 1].is_whitespace() {
        w -= 1;
    }
    while w < punct && !chars[w].is_alphanumeric() {
        w += 1;
    }
    if w == punct {
        return false;
    }
    let word: String = chars[w..punct].iter().collect::<String>().to_lowercase();
    abbreviations.iter().any(|a| a.to_lowercase() == word)
}

fn push_sentence(
    clean: &CleanText,
    chars: &[char],
    start: usize,
    mut end: usize,
    out: &mut Vec<Sentence>,
) {
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if end <= start {
        return;
    }
    let text: String = chars[start..end].iter().collect();
    let mut tokens = tokenize(&text);
    for token in &mut tokens {
        token.start += start;
        token.end += start;
    }
    out.push(Sentence {
        text,
        start,
        end,
        tokens,
    });
    let _ = clean; // offsets are relative to the clean text by construction
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textprep::strip_markup;

    fn split(text: &str) -> Vec<Sentence> {
        split_sentences_default(&strip_markup(text))
    }

    #[test]
    fn splits_on_terminal_punctuation() {
        let s = split("It fails. Restart helps.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "It fails.");
        assert_eq!(s[1].text, "Restart helps.");
    }

    #[test]
    fn version_number_does_not_split_early() {
        // hand trace: the period inside "v2.1" is not followed by whitespace,
        // so the only split point is after the final period
        let s = split("See v2.1. It fails.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "See v2.1.");
    }

    #[test]
    fn empty_text_gives_empty_list() {
        assert!(split("").is_empty());
        assert!(split("   ").is_empty());
    }

    #[test]
    fn abbreviation_guard_suppresses_split() {
        let s = split("Use retries, e.g. three of them. Then stop.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "Use retries, e.g. three of them.");
    }

    #[test]
    fn unterminated_tail_becomes_a_sentence() {
        let s = split("First one works. second has no period");
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].text, "second has no period");
    }

    #[test]
    fn ellipsis_is_one_boundary() {
        let s = split("Wait... Done.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "Wait...");
    }

    #[test]
    fn every_non_whitespace_char_in_exactly_one_sentence() {
        let text = "One. Two!  Three? And v1.2 four";
        let clean = strip_markup(text);
        let sentences = split_sentences_default(&clean);
        let chars: Vec<char> = clean.text.chars().collect();
        let mut covered = vec![0u8; chars.len()];
        for s in &sentences {
            for slot in &mut covered[s.start..s.end] {
                *slot += 1;
            }
        }
        for (i, c) in chars.iter().enumerate() {
            if !c.is_whitespace() {
                assert_eq!(covered[i], 1, "char {i} ({c:?}) covered {} times", covered[i]);
            } else {
                assert!(covered[i] <= 1);
            }
        }
    }

    #[test]
    fn token_offsets_are_absolute_into_clean_text() {
        let clean = strip_markup("Alpha beta. Gamma delta.");
        let sentences = split_sentences_default(&clean);
        let chars: Vec<char> = clean.text.chars().collect();
        for s in &sentences {
            for t in &s.tokens {
                let extracted: String = chars[t.start..t.end].iter().collect();
                assert_eq!(extracted, t.text);
            }
        }
    }
}

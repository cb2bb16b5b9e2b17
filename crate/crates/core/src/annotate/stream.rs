//! The tagged token and its delimiter-encoded stream form.
//!
//! A tagged sentence renders as `word°TAG°lemma` tokens joined by single
//! spaces. The `°` delimiter is what the passive-voice pattern expects, so
//! the encoding is load-bearing, not cosmetic.

use super::AnnotateError;

/// The closed Penn Treebank tag set used throughout, including the
/// punctuation tags.
pub const PENN_TAGS: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNP", "NNPS",
    "NNS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD",
    "VBG", "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "(", ")", "''", "``",
    "$", "#",
];

pub fn is_penn_tag(tag: &str) -> bool {
    PENN_TAGS.contains(&tag)
}

/// One word with its tag and lowercase base form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub word: String,
    pub pos: String,
    pub lemma: String,
}

impl TaggedToken {
    pub fn new(word: &str, pos: &str, lemma: &str) -> Self {
        TaggedToken {
            word: word.to_string(),
            pos: pos.to_string(),
            lemma: lemma.to_string(),
        }
    }
}

/// Rendered sentence encoding plus the span of each token within it, for
/// mapping pattern matches back to token indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedStream {
    pub rendered: String,
    /// Byte ranges of each `word°TAG°lemma` unit inside `rendered`.
    pub token_spans: Vec<(usize, usize)>,
}

impl TaggedStream {
    /// Index of the token whose rendered span contains byte `offset`.
    pub fn token_at(&self, offset: usize) -> Option<usize> {
        self.token_spans
            .iter()
            .position(|&(start, end)| offset >= start && offset < end)
    }
}

/// Encode tagged tokens as `word°TAG°lemma` joined by single spaces.
///
/// A `°` inside any field would corrupt the encoding, so it is rejected
/// here; the lint pipeline strips it from raw tokens before tagging.
pub fn render_tagged_stream(tagged: &[TaggedToken]) -> Result<TaggedStream, AnnotateError> {
    let mut rendered = String::new();
    let mut token_spans = Vec::with_capacity(tagged.len());
    for (i, token) in tagged.iter().enumerate() {
        for part in [&token.word, &token.pos, &token.lemma] {
            if part.contains('°') {
                return Err(AnnotateError::DelimiterInWord(part.clone()));
            }
        }
        if i > 0 {
            rendered.push(' ');
        }
        let start = rendered.len();
        rendered.push_str(&token.word);
        rendered.push('°');
        rendered.push_str(&token.pos);
        rendered.push('°');
        rendered.push_str(&token.lemma);
        token_spans.push((start, rendered.len()));
    }
    Ok(TaggedStream {
        rendered,
        token_spans,
    })
}

/// Inverse of [`render_tagged_stream`].
pub fn parse_tagged_stream(stream: &str) -> Result<Vec<TaggedToken>, AnnotateError> {
    if stream.is_empty() {
        return Ok(Vec::new());
    }
    stream
        .split(' ')
        .map(|unit| {
            let mut parts = unit.split('°');
            match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(word), Some(pos), Some(lemma), None) if !word.is_empty() => {
                    Ok(TaggedToken::new(word, pos, lemma))
                }
                _ => Err(AnnotateError::MalformedStream(format!(
                    "unit '{unit}' is not word°TAG°lemma"
                ))),
            }
        })
        .collect()
}

//! Tagger strategies behind a common trait.
//!
//! [`BundledTagger`] runs the averaged perceptron with the weight file that
//! ships in the crate, fronted by a closed-class lexicon. [`SidecarTagger`]
//! replays annotations produced by an external pipeline and falls back to a
//! wrapped tagger for sentences the sidecar does not cover.

use std::collections::HashMap;
use std::path::Path;
use std::sync::LazyLock;

use super::lemma::lemma_of;
use super::perceptron::PerceptronModel;
use super::stream::{is_penn_tag, TaggedToken};
use super::AnnotateError;

/// A POS tagging strategy: one Penn tag per input token.
pub trait Tagger: Send + Sync {
    fn name(&self) -> &'static str;
    fn tag_tokens(&self, tokens: &[String]) -> Vec<String>;
}

/// Tag and lemmatize a tokenized sentence.
pub fn pos_tag(tagger: &dyn Tagger, tokens: &[String]) -> Vec<TaggedToken> {
    let tags = tagger.tag_tokens(tokens);
    tokens
        .iter()
        .zip(tags)
        .map(|(word, pos)| {
            let lemma = lemma_of(word, &pos);
            TaggedToken {
                word: word.clone(),
                pos,
                lemma,
            }
        })
        .collect()
}

static BUNDLED_WEIGHTS: &str = include_str!("../../assets/pos_weights.json");

static BUNDLED_MODEL: LazyLock<PerceptronModel> = LazyLock::new(|| {
    PerceptronModel::from_json(BUNDLED_WEIGHTS).expect("bundled weight file is valid")
});

/// Words whose tag never depends on context. Checked before the model so
/// function words stay stable whatever the training corpus looked like.
static CLOSED_CLASS: LazyLock<HashMap<&'static str, &'static str>> = LazyLock::new(|| {
    let pairs: &[(&str, &str)] = &[
        ("the", "DT"),
        ("a", "DT"),
        ("an", "DT"),
        ("this", "DT"),
        ("that", "DT"),
        ("these", "DT"),
        ("those", "DT"),
        ("each", "DT"),
        ("every", "DT"),
        ("all", "DT"),
        ("some", "DT"),
        ("no", "DT"),
        ("another", "DT"),
        ("i", "PRP"),
        ("he", "PRP"),
        ("she", "PRP"),
        ("it", "PRP"),
        ("they", "PRP"),
        ("we", "PRP"),
        ("you", "PRP"),
        ("them", "PRP"),
        ("him", "PRP"),
        ("us", "PRP"),
        ("me", "PRP"),
        ("my", "PRP$"),
        ("your", "PRP$"),
        ("its", "PRP$"),
        ("our", "PRP$"),
        ("their", "PRP$"),
        ("his", "PRP$"),
        ("shall", "MD"),
        ("should", "MD"),
        ("will", "MD"),
        ("would", "MD"),
        ("can", "MD"),
        ("could", "MD"),
        ("may", "MD"),
        ("might", "MD"),
        ("must", "MD"),
        ("cannot", "MD"),
        ("to", "TO"),
        ("and", "CC"),
        ("or", "CC"),
        ("but", "CC"),
        ("nor", "CC"),
        ("of", "IN"),
        ("in", "IN"),
        ("on", "IN"),
        ("at", "IN"),
        ("by", "IN"),
        ("from", "IN"),
        ("with", "IN"),
        ("without", "IN"),
        ("for", "IN"),
        ("as", "IN"),
        ("into", "IN"),
        ("onto", "IN"),
        ("over", "IN"),
        ("under", "IN"),
        ("about", "IN"),
        ("against", "IN"),
        ("between", "IN"),
        ("during", "IN"),
        ("until", "IN"),
        ("after", "IN"),
        ("before", "IN"),
        ("while", "IN"),
        ("because", "IN"),
        ("if", "IN"),
        ("since", "IN"),
        ("than", "IN"),
        ("via", "IN"),
        ("per", "IN"),
        ("within", "IN"),
        ("upon", "IN"),
        ("through", "IN"),
        ("despite", "IN"),
        ("whether", "IN"),
        ("there", "EX"),
        ("is", "VBZ"),
        ("has", "VBZ"),
        ("does", "VBZ"),
        ("was", "VBD"),
        ("were", "VBD"),
        ("did", "VBD"),
        ("am", "VBP"),
        ("are", "VBP"),
        ("do", "VBP"),
        ("have", "VBP"),
        ("be", "VB"),
        ("been", "VBN"),
        ("being", "VBG"),
        ("not", "RB"),
        ("n't", "RB"),
        ("'t", "RB"),
        ("very", "RB"),
        ("really", "RB"),
        ("also", "RB"),
        ("always", "RB"),
        ("never", "RB"),
        ("now", "RB"),
        ("then", "RB"),
        ("here", "RB"),
        ("soon", "RB"),
        ("already", "RB"),
        ("still", "RB"),
        ("just", "RB"),
        ("only", "RB"),
        ("too", "RB"),
        ("again", "RB"),
        ("yet", "RB"),
        ("which", "WDT"),
        ("who", "WP"),
        ("what", "WP"),
        ("when", "WRB"),
        ("where", "WRB"),
        ("why", "WRB"),
        ("how", "WRB"),
    ];
    pairs.iter().copied().collect()
});

/// The default tagging strategy: closed-class lexicon, then the bundled
/// perceptron model.
pub struct BundledTagger {
    model: &'static PerceptronModel,
}

impl BundledTagger {
    pub fn new() -> Self {
        BundledTagger {
            model: &BUNDLED_MODEL,
        }
    }

    /// Same lexicon front, custom weight file.
    pub fn with_model(model: PerceptronModel) -> OwnedModelTagger {
        OwnedModelTagger { model }
    }

    fn lookup(word: &str) -> Option<String> {
        if let Some(tag) = punct_tag(word) {
            return Some(tag.to_string());
        }
        if word.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
            && word.chars().next().is_some_and(|c| c.is_ascii_digit())
        {
            return Some("CD".to_string());
        }
        CLOSED_CLASS
            .get(word.to_lowercase().as_str())
            .map(|tag| tag.to_string())
    }
}

impl Default for BundledTagger {
    fn default() -> Self {
        Self::new()
    }
}

impl Tagger for BundledTagger {
    fn name(&self) -> &'static str {
        "bundled"
    }

    fn tag_tokens(&self, tokens: &[String]) -> Vec<String> {
        self.model.tag_with_dict(tokens, &BundledTagger::lookup)
    }
}

/// [`BundledTagger`] behaviour over a caller-supplied weight file.
pub struct OwnedModelTagger {
    model: PerceptronModel,
}

impl Tagger for OwnedModelTagger {
    fn name(&self) -> &'static str {
        "custom-weights"
    }

    fn tag_tokens(&self, tokens: &[String]) -> Vec<String> {
        self.model.tag_with_dict(tokens, &BundledTagger::lookup)
    }
}

fn punct_tag(word: &str) -> Option<&'static str> {
    let mut chars = word.chars();
    let c = chars.next()?;
    if chars.next().is_some() || c.is_alphanumeric() {
        return None;
    }
    Some(match c {
        '.' | '!' | '?' => ".",
        ',' => ",",
        ';' | ':' | '-' | '—' | '–' | '…' => ":",
        '(' | '[' | '{' => "(",
        ')' | ']' | '}' => ")",
        '"' | '\'' | '`' => "''",
        '$' => "$",
        '#' => "#",
        '&' => "CC",
        _ => "SYM",
    })
}

/// Replays external annotations: one sentence per blank-line-separated
/// block, one `token<TAB>TAG` line per token. Sentences not present in the
/// sidecar go to the fallback tagger.
pub struct SidecarTagger {
    annotations: HashMap<Vec<String>, Vec<String>>,
    fallback: Box<dyn Tagger>,
}

impl SidecarTagger {
    pub fn from_path(path: &Path, fallback: Box<dyn Tagger>) -> Result<Self, AnnotateError> {
        let text = std::fs::read_to_string(path).map_err(|source| AnnotateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_str_contents(&text, &path.display().to_string(), fallback)
    }

    pub fn from_str_contents(
        contents: &str,
        location: &str,
        fallback: Box<dyn Tagger>,
    ) -> Result<Self, AnnotateError> {
        let mut annotations = HashMap::new();
        let mut words = Vec::new();
        let mut tags = Vec::new();
        for (line_no, line) in contents.lines().enumerate() {
            if line.trim().is_empty() {
                if !words.is_empty() {
                    annotations.insert(std::mem::take(&mut words), std::mem::take(&mut tags));
                }
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or_else(|| {
                AnnotateError::SidecarFormat {
                    location: format!("{location}:{}", line_no + 1),
                    message: "expected token<TAB>TAG".to_string(),
                }
            })?;
            if !is_penn_tag(tag) {
                return Err(AnnotateError::SidecarFormat {
                    location: format!("{location}:{}", line_no + 1),
                    message: format!("'{tag}' is not a Penn tag"),
                });
            }
            words.push(word.to_string());
            tags.push(tag.to_string());
        }
        if !words.is_empty() {
            annotations.insert(words, tags);
        }
        Ok(SidecarTagger {
            annotations,
            fallback,
        })
    }

    pub fn coverage(&self) -> usize {
        self.annotations.len()
    }
}

impl Tagger for SidecarTagger {
    fn name(&self) -> &'static str {
        "sidecar"
    }

    fn tag_tokens(&self, tokens: &[String]) -> Vec<String> {
        match self.annotations.get(tokens) {
            Some(tags) => tags.clone(),
            None => self.fallback.tag_tokens(tokens),
        }
    }
}

/// Parse the `token<TAB>TAG` block format into ordered tagged sentences.
/// Used for sidecar files and for the training corpus, which share the
/// format.
pub fn parse_tagged_blocks(
    contents: &str,
    location: &str,
) -> Result<Vec<Vec<(String, String)>>, AnnotateError> {
    let mut sentences = Vec::new();
    let mut current: Vec<(String, String)> = Vec::new();
    for (line_no, line) in contents.lines().enumerate() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let (word, tag) = line
            .split_once('\t')
            .ok_or_else(|| AnnotateError::SidecarFormat {
                location: format!("{location}:{}", line_no + 1),
                message: "expected token<TAB>TAG".to_string(),
            })?;
        if !is_penn_tag(tag) {
            return Err(AnnotateError::SidecarFormat {
                location: format!("{location}:{}", line_no + 1),
                message: format!("'{tag}' is not a Penn tag"),
            });
        }
        current.push((word.to_string(), tag.to_string()));
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

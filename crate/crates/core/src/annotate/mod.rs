//! Token-level linguistic annotation.
//!
//! Produces Penn-Treebank POS tags (averaged perceptron with bundled
//! weights, or sidecar annotation files), lowercase lemmas, the
//! degree-sign-delimited tagged stream the passive-voice pattern runs over,
//! hypernym paths for nouns, and a grammatical-role classification for
//! "-ing" forms.

mod hypernym;
mod lemma;
mod perceptron;
mod stream;
mod tagger;
mod vbg;

pub use hypernym::HypernymLexicon;
pub use lemma::lemma_of;
pub use perceptron::PerceptronModel;
pub use stream::{
    is_penn_tag, parse_tagged_stream, render_tagged_stream, TaggedStream, TaggedToken, PENN_TAGS,
};
pub use tagger::{parse_tagged_blocks, pos_tag, BundledTagger, OwnedModelTagger, SidecarTagger, Tagger};
pub use vbg::{classify_vbg_role, VbgRole};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnnotateError {
    #[error("word '{0}' contains the stream delimiter; sanitize it upstream")]
    DelimiterInWord(String),
    #[error("malformed tagged stream: {0}")]
    MalformedStream(String),
    #[error("token {index} of {len} is not tagged VBG")]
    NotVbg { index: usize, len: usize },
    #[error("token index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad weight file: {0}")]
    WeightsFormat(String),
    #[error("bad lexicon ({location}): {message}")]
    LexiconFormat { location: String, message: String },
    #[error("bad sidecar annotations ({location}): {message}")]
    SidecarFormat { location: String, message: String },
}

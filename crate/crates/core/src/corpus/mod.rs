//! Typed in-memory corpus of issue-tracker exports.
//!
//! Issues arrive as newline-delimited records (see `docs/schema.md`), are
//! validated and grouped by tracker, and are immutable afterwards. Field
//! histories and point-in-time snapshots are reconstructed from the
//! changelog, which stores one before/after pair per touched field.

mod history;
mod load;
mod select;
mod types;

pub use history::{reconstruct_field_history, snapshot_at, EvolvingField, FieldHistory, HistoryEntry};
pub use load::{load_corpus, LoadOutcome, LoadWarning};
pub use select::{
    sample_and_clean, select_evolved_descriptions, select_linked_issues, select_user_stories,
    CleaningReport, DescriptionVersion, LinkedSelection,
};
pub use types::{
    ChangeEvent, ChangeItem, Comment, Corpus, Issue, IssueLink, IssueSnapshot, LinkDirection,
    Timestamp,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no issue record files found under {0}")]
    NoInputFiles(String),
    #[error("{location}: {message}")]
    MalformedRecord { location: String, message: String },
    #[error("unknown tracker '{0}'")]
    UnknownTracker(String),
    #[error("unknown field '{0}'")]
    UnknownField(String),
    #[error("issue {key} has no creation timestamp")]
    MissingCreated { key: String },
    #[error("snapshot time {at} precedes creation of {key}")]
    SnapshotBeforeCreation { key: String, at: String },
    #[error("duplicate issue key '{0}'")]
    DuplicateKey(String),
}

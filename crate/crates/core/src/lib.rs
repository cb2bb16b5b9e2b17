//! Core library of the issuelens toolkit.
//!
//! issuelens mines Jira-style issue-tracker exports. The modules map onto the
//! analysis pipelines:
//!
//! - [`corpus`] — load newline-delimited issue exports, reconstruct field
//!   histories and point-in-time snapshots, select and clean issue samples
//! - [`textprep`] — strip tracker markup, split sentences, tokenize
//! - [`annotate`] — part-of-speech tagging, the delimiter-encoded tagged
//!   stream, hypernym lookups, grammatical-role classification of -ing forms
//! - [`lints`] — requirements-quality rules (subjective language and
//!   nominalisations) behind a runtime-selectable rule registry
//! - [`sentiment`] — lexicon-based polarity scoring and description-evolution
//!   trends
//! - [`discussions`] — field/state dictionaries and field-change mention
//!   mining over comments and description evolutions
//! - [`links`] — TF-IDF or sidecar embeddings, cosine similarity of linked
//!   issues, per-link-type distributions

pub mod annotate;
pub mod corpus;
pub mod discussions;
pub mod links;
pub mod lints;
pub mod sentiment;
pub mod textprep;

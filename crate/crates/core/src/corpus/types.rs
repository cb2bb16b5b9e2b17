//! Domain types mirroring the tracker data model.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::CorpusError;

pub type Timestamp = DateTime<Utc>;

/// One tracked item: content, metadata, workflow fields, comments,
/// changelog, links.
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub key: String,
    pub tracker: String,
    pub project: String,
    pub summary: String,
    pub description: String,
    pub issue_type: String,
    pub status: String,
    pub priority: Option<String>,
    pub resolution: Option<String>,
    /// Creation timestamp. Optional so that defective exports survive
    /// loading; `sample_and_clean` removes issues without one.
    pub created: Option<Timestamp>,
    pub resolved: Option<Timestamp>,
    pub labels: BTreeSet<String>,
    pub environment: Option<String>,
    pub versions_affected: BTreeSet<String>,
    pub versions_fixed: BTreeSet<String>,
    pub creator: String,
    pub reporter: String,
    pub assignee: Option<String>,
    pub components: BTreeSet<String>,
    pub parent: Option<String>,
    /// Ascending by creation time.
    pub comments: Vec<Comment>,
    /// Ascending by event time.
    pub changelog: Vec<ChangeEvent>,
    pub links: Vec<IssueLink>,
}

impl Issue {
    /// Minimal issue for fixtures and tests; fill the rest via the fields.
    pub fn new(key: &str, tracker: &str) -> Self {
        Issue {
            key: key.to_string(),
            tracker: tracker.to_string(),
            project: key.split('-').next().unwrap_or(key).to_string(),
            summary: String::new(),
            description: String::new(),
            issue_type: "Bug".to_string(),
            status: "Open".to_string(),
            priority: None,
            resolution: None,
            created: None,
            resolved: None,
            labels: BTreeSet::new(),
            environment: None,
            versions_affected: BTreeSet::new(),
            versions_fixed: BTreeSet::new(),
            creator: "unknown".to_string(),
            reporter: "unknown".to_string(),
            assignee: None,
            components: BTreeSet::new(),
            parent: None,
            comments: Vec::new(),
            changelog: Vec::new(),
            links: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comment {
    pub id: String,
    pub author: String,
    pub created: Timestamp,
    /// May be empty but is always present.
    pub body: String,
}

/// One timestamped batch of field edits.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeEvent {
    pub id: String,
    pub author: String,
    pub created: Timestamp,
    /// Never empty.
    pub items: Vec<ChangeItem>,
}

/// A single before/after pair for one field.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeItem {
    pub field: String,
    pub from_value: Option<String>,
    pub to_value: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkDirection {
    Outward,
    Inward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IssueLink {
    pub link_type: String,
    pub direction: LinkDirection,
    pub source_key: String,
    pub target_key: String,
}

/// An issue as it looked at `as_of`: same field set as [`Issue`] minus the
/// changelog, with every evolving field rewound.
#[derive(Debug, Clone, PartialEq)]
pub struct IssueSnapshot {
    pub as_of: Timestamp,
    pub key: String,
    pub tracker: String,
    pub project: String,
    pub summary: String,
    pub description: String,
    pub issue_type: String,
    pub status: String,
    pub priority: Option<String>,
    pub resolution: Option<String>,
    pub created: Option<Timestamp>,
    pub resolved: Option<Timestamp>,
    pub labels: BTreeSet<String>,
    pub environment: Option<String>,
    pub versions_affected: BTreeSet<String>,
    pub versions_fixed: BTreeSet<String>,
    pub creator: String,
    pub reporter: String,
    pub assignee: Option<String>,
    pub components: BTreeSet<String>,
    pub parent: Option<String>,
    pub comments: Vec<Comment>,
    pub links: Vec<IssueLink>,
}

/// Immutable collection of issues, grouped by tracker, iterated in key
/// order so every downstream report is deterministic.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    issues: BTreeMap<String, Issue>,
    trackers: BTreeMap<String, Vec<String>>,
}

impl Corpus {
    pub fn from_issues<I: IntoIterator<Item = Issue>>(iter: I) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::default();
        for issue in iter {
            if corpus.issues.contains_key(&issue.key) {
                return Err(CorpusError::DuplicateKey(issue.key));
            }
            corpus
                .trackers
                .entry(issue.tracker.clone())
                .or_default()
                .push(issue.key.clone());
            corpus.issues.insert(issue.key.clone(), issue);
        }
        for keys in corpus.trackers.values_mut() {
            keys.sort();
        }
        Ok(corpus)
    }

    pub fn get(&self, key: &str) -> Option<&Issue> {
        self.issues.get(key)
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    /// All issues in ascending key order.
    pub fn issues(&self) -> impl Iterator<Item = &Issue> {
        self.issues.values()
    }

    pub fn tracker_names(&self) -> impl Iterator<Item = &str> {
        self.trackers.keys().map(String::as_str)
    }

    pub fn has_tracker(&self, tracker: &str) -> bool {
        self.trackers.contains_key(tracker)
    }

    /// Issues of one tracker in ascending key order.
    pub fn tracker_issues<'a>(&'a self, tracker: &str) -> impl Iterator<Item = &'a Issue> + 'a {
        self.trackers
            .get(tracker)
            .into_iter()
            .flatten()
            .filter_map(|key| self.issues.get(key))
    }

    /// Per-tracker issue counts, used by ingest reports.
    pub fn tracker_counts(&self) -> BTreeMap<String, usize> {
        self.trackers
            .iter()
            .map(|(name, keys)| (name.clone(), keys.len()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_keys_are_rejected() {
        let issues = vec![Issue::new("A-1", "apache"), Issue::new("A-1", "apache")];
        assert!(matches!(
            Corpus::from_issues(issues),
            Err(CorpusError::DuplicateKey(_))
        ));
    }

    #[test]
    fn issues_iterate_in_key_order() {
        let corpus = Corpus::from_issues(vec![
            Issue::new("B-2", "b"),
            Issue::new("A-1", "a"),
            Issue::new("A-10", "a"),
        ])
        .unwrap();
        let keys: Vec<_> = corpus.issues().map(|i| i.key.as_str()).collect();
        assert_eq!(keys, vec!["A-1", "A-10", "B-2"]);
        assert_eq!(corpus.tracker_counts()["a"], 2);
    }
}

//! Field-history reconstruction and point-in-time snapshots.
//!
//! Trackers store only before/after pairs, so the creation-time value of a
//! field is back-inferred: it is the `from` side of the earliest change, or
//! the current stored value when the field never changed. Histories whose
//! final `to` value disagrees with the stored value are emitted anyway and
//! flagged, never repaired.

use chrono::{DateTime, Utc};

use super::types::{Issue, IssueSnapshot, Timestamp};
use super::CorpusError;

/// The scalar/text fields whose evolution is tracked. `ResolvedDate` changes
/// are not tracked by the source trackers, so `resolved` is absent here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolvingField {
    Summary,
    Description,
    Status,
    Priority,
    Resolution,
    Environment,
    IssueType,
    Assignee,
}

impl EvolvingField {
    pub const ALL: [EvolvingField; 8] = [
        EvolvingField::Summary,
        EvolvingField::Description,
        EvolvingField::Status,
        EvolvingField::Priority,
        EvolvingField::Resolution,
        EvolvingField::Environment,
        EvolvingField::IssueType,
        EvolvingField::Assignee,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvolvingField::Summary => "summary",
            EvolvingField::Description => "description",
            EvolvingField::Status => "status",
            EvolvingField::Priority => "priority",
            EvolvingField::Resolution => "resolution",
            EvolvingField::Environment => "environment",
            EvolvingField::IssueType => "issue_type",
            EvolvingField::Assignee => "assignee",
        }
    }

    /// Accepts canonical names plus the spellings Jira uses in changelogs.
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "summary" => Some(EvolvingField::Summary),
            "description" => Some(EvolvingField::Description),
            "status" => Some(EvolvingField::Status),
            "priority" => Some(EvolvingField::Priority),
            "resolution" => Some(EvolvingField::Resolution),
            "environment" => Some(EvolvingField::Environment),
            "issue_type" | "issuetype" => Some(EvolvingField::IssueType),
            "assignee" => Some(EvolvingField::Assignee),
            _ => None,
        }
    }

    fn current_value(self, issue: &Issue) -> Option<String> {
        match self {
            EvolvingField::Summary => Some(issue.summary.clone()),
            EvolvingField::Description => Some(issue.description.clone()),
            EvolvingField::Status => Some(issue.status.clone()),
            EvolvingField::Priority => issue.priority.clone(),
            EvolvingField::Resolution => issue.resolution.clone(),
            EvolvingField::Environment => issue.environment.clone(),
            EvolvingField::IssueType => Some(issue.issue_type.clone()),
            EvolvingField::Assignee => issue.assignee.clone(),
        }
    }

    fn write(self, snapshot: &mut IssueSnapshot, value: Option<String>) {
        match self {
            EvolvingField::Summary => snapshot.summary = value.unwrap_or_default(),
            EvolvingField::Description => snapshot.description = value.unwrap_or_default(),
            EvolvingField::Status => snapshot.status = value.unwrap_or_default(),
            EvolvingField::Priority => snapshot.priority = value,
            EvolvingField::Resolution => snapshot.resolution = value,
            EvolvingField::Environment => snapshot.environment = value,
            EvolvingField::IssueType => snapshot.issue_type = value.unwrap_or_default(),
            EvolvingField::Assignee => snapshot.assignee = value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryEntry {
    pub at: Timestamp,
    pub value: Option<String>,
}

/// An ordered value history for one field. Entry 0 is the inferred
/// creation-time value.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldHistory {
    pub field: EvolvingField,
    pub entries: Vec<HistoryEntry>,
    /// True when the final `to` value disagrees with the stored value.
    pub inconsistent: bool,
}

/// Absent and empty are the same thing for comparison purposes; trackers
/// render a cleared field as either.
fn values_equal(a: &Option<String>, b: &Option<String>) -> bool {
    a.as_deref().unwrap_or("") == b.as_deref().unwrap_or("")
}

/// Rebuild the full value history of one field from the changelog.
pub fn reconstruct_field_history(issue: &Issue, field: &str) -> Result<FieldHistory, CorpusError> {
    let field = EvolvingField::parse(field).ok_or_else(|| CorpusError::UnknownField(field.to_string()))?;

    let mut changes: Vec<(DateTime<Utc>, &super::types::ChangeItem)> = Vec::new();
    for event in &issue.changelog {
        for item in &event.items {
            if EvolvingField::parse(&item.field) == Some(field) {
                changes.push((event.created, item));
            }
        }
    }

    let current = field.current_value(issue);
    let initial = match changes.first() {
        Some((_, first)) => first.from_value.clone(),
        None => current.clone(),
    };
    let initial_at = issue
        .created
        .or_else(|| changes.first().map(|(at, _)| *at))
        .unwrap_or(DateTime::<Utc>::MIN_UTC);

    let mut entries = vec![HistoryEntry {
        at: initial_at,
        value: initial,
    }];
    for (at, item) in &changes {
        entries.push(HistoryEntry {
            at: *at,
            value: item.to_value.clone(),
        });
    }

    let inconsistent = !changes.is_empty() && !values_equal(&entries.last().unwrap().value, &current);

    Ok(FieldHistory {
        field,
        entries,
        inconsistent,
    })
}

/// The issue as it looked at time `t`. Evolving fields rewind via the
/// changelog (changes at exactly `t` are applied); comments are filtered to
/// `created <= t`; everything else is copied.
pub fn snapshot_at(issue: &Issue, t: Timestamp) -> Result<IssueSnapshot, CorpusError> {
    let created = issue.created.ok_or_else(|| CorpusError::MissingCreated {
        key: issue.key.clone(),
    })?;
    if t < created {
        return Err(CorpusError::SnapshotBeforeCreation {
            key: issue.key.clone(),
            at: t.to_rfc3339(),
        });
    }

    let mut snapshot = IssueSnapshot {
        as_of: t,
        key: issue.key.clone(),
        tracker: issue.tracker.clone(),
        project: issue.project.clone(),
        summary: issue.summary.clone(),
        description: issue.description.clone(),
        issue_type: issue.issue_type.clone(),
        status: issue.status.clone(),
        priority: issue.priority.clone(),
        resolution: issue.resolution.clone(),
        created: issue.created,
        resolved: issue.resolved,
        labels: issue.labels.clone(),
        environment: issue.environment.clone(),
        versions_affected: issue.versions_affected.clone(),
        versions_fixed: issue.versions_fixed.clone(),
        creator: issue.creator.clone(),
        reporter: issue.reporter.clone(),
        assignee: issue.assignee.clone(),
        components: issue.components.clone(),
        parent: issue.parent.clone(),
        comments: issue
            .comments
            .iter()
            .filter(|c| c.created <= t)
            .cloned()
            .collect(),
        links: issue.links.clone(),
    };

    for field in EvolvingField::ALL {
        let history = reconstruct_field_history(issue, field.name())?;
        let value = history
            .entries
            .iter()
            .rev()
            .find(|e| e.at <= t)
            .map(|e| e.value.clone())
            .unwrap_or_else(|| history.entries[0].value.clone());
        field.write(&mut snapshot, value);
    }

    Ok(snapshot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::types::{ChangeEvent, ChangeItem, Comment};
    use chrono::TimeZone;

    fn ts(day: u32, hour: u32) -> Timestamp {
        Utc.with_ymd_and_hms(2021, 3, day, hour, 0, 0).unwrap()
    }

    fn change(id: &str, at: Timestamp, field: &str, from: Option<&str>, to: Option<&str>) -> ChangeEvent {
        ChangeEvent {
            id: id.to_string(),
            author: "u".to_string(),
            created: at,
            items: vec![ChangeItem {
                field: field.to_string(),
                from_value: from.map(String::from),
                to_value: to.map(String::from),
            }],
        }
    }

    fn issue_with_description_changes() -> Issue {
        let mut issue = Issue::new("AB-1", "apache");
        issue.created = Some(ts(1, 0));
        issue.description = "v2".to_string();
        issue.changelog = vec![
            change("h1", ts(2, 0), "description", Some("v0"), Some("v1")),
            change("h2", ts(3, 0), "description", Some("v1"), Some("v2")),
        ];
        issue
    }

    #[test]
    fn no_changes_yields_single_creation_entry() {
        let mut issue = Issue::new("AB-1", "apache");
        issue.created = Some(ts(1, 0));
        issue.description = "current".to_string();
        let history = reconstruct_field_history(&issue, "description").unwrap();
        assert_eq!(history.entries.len(), 1);
        assert_eq!(history.entries[0].at, ts(1, 0));
        assert_eq!(history.entries[0].value.as_deref(), Some("current"));
        assert!(!history.inconsistent);
    }

    #[test]
    fn two_changes_yield_three_entries_with_back_inferred_initial() {
        let issue = issue_with_description_changes();
        let history = reconstruct_field_history(&issue, "description").unwrap();
        assert_eq!(history.entries.len(), 3);
        assert_eq!(history.entries[0].value.as_deref(), Some("v0"));
        assert_eq!(history.entries[2].value.as_deref(), Some("v2"));
        assert!(!history.inconsistent);
        // forward replay ends at the stored value
        assert_eq!(
            history.entries.last().unwrap().value.as_deref(),
            Some(issue.description.as_str())
        );
    }

    #[test]
    fn disagreeing_final_value_is_flagged_not_repaired() {
        let mut issue = issue_with_description_changes();
        issue.description = "tampered".to_string();
        let history = reconstruct_field_history(&issue, "description").unwrap();
        assert_eq!(history.entries.len(), 3);
        assert_eq!(history.entries[2].value.as_deref(), Some("v2"));
        assert!(history.inconsistent);
    }

    #[test]
    fn unknown_field_is_an_error() {
        let issue = Issue::new("AB-1", "apache");
        assert!(matches!(
            reconstruct_field_history(&issue, "watchers"),
            Err(CorpusError::UnknownField(_))
        ));
    }

    #[test]
    fn snapshot_at_creation_has_initial_values_and_no_later_comments() {
        let mut issue = issue_with_description_changes();
        issue.comments = vec![Comment {
            id: "c1".to_string(),
            author: "u".to_string(),
            created: ts(2, 12),
            body: "hi".to_string(),
        }];
        let snap = snapshot_at(&issue, ts(1, 0)).unwrap();
        assert_eq!(snap.description, "v0");
        assert!(snap.comments.is_empty());
    }

    #[test]
    fn snapshot_now_equals_current_state() {
        let issue = issue_with_description_changes();
        let snap = snapshot_at(&issue, ts(28, 0)).unwrap();
        assert_eq!(snap.description, issue.description);
        assert_eq!(snap.status, issue.status);
        assert_eq!(snap.comments.len(), issue.comments.len());
    }

    #[test]
    fn snapshot_straddles_a_change_boundary() {
        let mut issue = Issue::new("AB-1", "apache");
        issue.created = Some(ts(1, 0));
        issue.priority = Some("Major".to_string());
        issue.changelog = vec![change("h1", ts(5, 0), "priority", Some("Minor"), Some("Major"))];

        let before = snapshot_at(&issue, ts(4, 23)).unwrap();
        let at = snapshot_at(&issue, ts(5, 0)).unwrap();
        let after = snapshot_at(&issue, ts(5, 1)).unwrap();
        assert_eq!(before.priority.as_deref(), Some("Minor"));
        assert_eq!(at.priority.as_deref(), Some("Major"));
        assert_eq!(after.priority.as_deref(), Some("Major"));
    }

    #[test]
    fn snapshot_before_creation_is_rejected() {
        let mut issue = Issue::new("AB-1", "apache");
        issue.created = Some(ts(2, 0));
        assert!(matches!(
            snapshot_at(&issue, ts(1, 0)),
            Err(CorpusError::SnapshotBeforeCreation { .. })
        ));
    }

    #[test]
    fn jira_spelling_of_issue_type_matches() {
        let mut issue = Issue::new("AB-1", "apache");
        issue.created = Some(ts(1, 0));
        issue.issue_type = "Story".to_string();
        issue.changelog = vec![change("h1", ts(2, 0), "issuetype", Some("Bug"), Some("Story"))];
        let history = reconstruct_field_history(&issue, "issue_type").unwrap();
        assert_eq!(history.entries[0].value.as_deref(), Some("Bug"));
        assert!(!history.inconsistent);
    }
}

//! Newline-delimited record ingestion.
//!
//! One JSON object per line; the field layout is documented in
//! `docs/schema.md`. Validation failures skip the record with a warning, or
//! abort naming the offending record when `strict` is set.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::Deserialize;

use super::types::{ChangeEvent, ChangeItem, Comment, Corpus, Issue, IssueLink, LinkDirection};
use super::CorpusError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadWarning {
    /// `file:line` of the record (or the issue key for semantic warnings).
    pub location: String,
    pub message: String,
}

#[derive(Debug)]
pub struct LoadOutcome {
    pub corpus: Corpus,
    pub warnings: Vec<LoadWarning>,
    /// Files that contributed records, in the order they were read.
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIssue {
    key: String,
    tracker: String,
    project: String,
    summary: String,
    #[serde(default)]
    description: Option<String>,
    issue_type: String,
    status: String,
    #[serde(default)]
    priority: Option<String>,
    #[serde(default)]
    resolution: Option<String>,
    #[serde(default)]
    created: Option<String>,
    #[serde(default)]
    resolved: Option<String>,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    environment: Option<String>,
    #[serde(default)]
    versions_affected: Vec<String>,
    #[serde(default)]
    versions_fixed: Vec<String>,
    creator: String,
    reporter: String,
    #[serde(default)]
    assignee: Option<String>,
    #[serde(default)]
    components: Vec<String>,
    #[serde(default)]
    parent: Option<String>,
    #[serde(default)]
    comments: Vec<RawComment>,
    #[serde(default)]
    changelog: Vec<RawChangeEvent>,
    #[serde(default)]
    links: Vec<RawLink>,
}

#[derive(Debug, Deserialize)]
struct RawComment {
    id: String,
    author: String,
    created: String,
    body: String,
}

#[derive(Debug, Deserialize)]
struct RawChangeEvent {
    id: String,
    author: String,
    created: String,
    items: Vec<RawChangeItem>,
}

#[derive(Debug, Deserialize)]
struct RawChangeItem {
    field: String,
    #[serde(rename = "fromString", default)]
    from_string: Option<String>,
    #[serde(rename = "toString", default)]
    to_string: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RawLink {
    #[serde(rename = "type")]
    link_type: String,
    direction: LinkDirection,
    #[serde(rename = "otherKey")]
    other_key: String,
}

/// Load a single export file or a directory of `*.jsonl` / `*.ndjson` files.
pub fn load_corpus(path: &Path, strict: bool) -> Result<LoadOutcome, CorpusError> {
    let files = input_files(path)?;
    let mut warnings = Vec::new();
    let mut issues: Vec<Issue> = Vec::new();
    let mut seen_keys: BTreeSet<String> = BTreeSet::new();

    for file in &files {
        let reader = BufReader::new(File::open(file).map_err(|source| CorpusError::Io {
            path: file.display().to_string(),
            source,
        })?);
        for (line_no, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| CorpusError::Io {
                path: file.display().to_string(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let location = format!("{}:{}", file.display(), line_no + 1);
            match parse_record(&line, &mut warnings, &location) {
                Ok(issue) => {
                    if seen_keys.contains(&issue.key) {
                        let message = format!("duplicate issue key '{}'", issue.key);
                        if strict {
                            return Err(CorpusError::MalformedRecord { location, message });
                        }
                        warnings.push(LoadWarning { location, message });
                        continue;
                    }
                    seen_keys.insert(issue.key.clone());
                    issues.push(issue);
                }
                Err(message) => {
                    if strict {
                        return Err(CorpusError::MalformedRecord { location, message });
                    }
                    warnings.push(LoadWarning { location, message });
                }
            }
        }
    }

    let corpus = Corpus::from_issues(issues)?;
    Ok(LoadOutcome {
        corpus,
        warnings,
        files,
    })
}

fn input_files(path: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let meta = std::fs::metadata(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("jsonl") | Some("ndjson")
            )
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::NoInputFiles(path.display().to_string()));
    }
    Ok(files)
}

fn parse_record(
    line: &str,
    warnings: &mut Vec<LoadWarning>,
    location: &str,
) -> Result<Issue, String> {
    let raw: RawIssue = serde_json::from_str(line).map_err(|e| e.to_string())?;

    if raw.key.trim().is_empty() {
        return Err("empty issue key".to_string());
    }
    if raw.tracker.trim().is_empty() {
        return Err("empty tracker name".to_string());
    }

    let created = parse_opt_ts(&raw.created, "created")?;
    let resolved = parse_opt_ts(&raw.resolved, "resolved")?;

    let mut comments = Vec::with_capacity(raw.comments.len());
    for c in raw.comments {
        comments.push(Comment {
            created: parse_ts(&c.created, "comment.created")?,
            id: c.id,
            author: c.author,
            body: c.body,
        });
    }
    comments.sort_by(|a, b| (a.created, &a.id).cmp(&(b.created, &b.id)));

    let mut changelog = Vec::with_capacity(raw.changelog.len());
    for ev in raw.changelog {
        if ev.items.is_empty() {
            return Err(format!("change event '{}' has no items", ev.id));
        }
        let mut items = Vec::with_capacity(ev.items.len());
        for item in ev.items {
            if item.from_string.is_none() && item.to_string.is_none() {
                return Err(format!(
                    "change event '{}' item for field '{}' has neither fromString nor toString",
                    ev.id, item.field
                ));
            }
            items.push(ChangeItem {
                field: item.field,
                from_value: item.from_string,
                to_value: item.to_string,
            });
        }
        changelog.push(ChangeEvent {
            created: parse_ts(&ev.created, "changelog.created")?,
            id: ev.id,
            author: ev.author,
            items,
        });
    }
    changelog.sort_by(|a, b| (a.created, &a.id).cmp(&(b.created, &b.id)));

    // Self-links and untyped links are dropped, not fatal: trackers do not
    // enforce validating these and the rest of the record is sound.
    let mut links = Vec::with_capacity(raw.links.len());
    for l in raw.links {
        if l.link_type.trim().is_empty() {
            warnings.push(LoadWarning {
                location: location.to_string(),
                message: format!("{}: dropped link with empty type", raw.key),
            });
            continue;
        }
        if l.other_key == raw.key {
            warnings.push(LoadWarning {
                location: location.to_string(),
                message: format!("{}: dropped self-link", raw.key),
            });
            continue;
        }
        links.push(IssueLink {
            link_type: l.link_type,
            direction: l.direction,
            source_key: raw.key.clone(),
            target_key: l.other_key,
        });
    }

    Ok(Issue {
        key: raw.key,
        tracker: raw.tracker,
        project: raw.project,
        summary: raw.summary,
        description: raw.description.unwrap_or_default(),
        issue_type: raw.issue_type,
        status: raw.status,
        priority: raw.priority,
        resolution: raw.resolution,
        created,
        resolved,
        labels: raw.labels.into_iter().collect(),
        environment: raw.environment,
        versions_affected: raw.versions_affected.into_iter().collect(),
        versions_fixed: raw.versions_fixed.into_iter().collect(),
        creator: raw.creator,
        reporter: raw.reporter,
        assignee: raw.assignee,
        components: raw.components.into_iter().collect(),
        parent: raw.parent,
        comments,
        changelog,
        links,
    })
}

fn parse_ts(value: &str, field: &str) -> Result<DateTime<Utc>, String> {
    DateTime::parse_from_rfc3339(value)
        .map(|dt| dt.with_timezone(&Utc))
        .map_err(|e| format!("bad timestamp in {field} ('{value}'): {e}"))
}

fn parse_opt_ts(value: &Option<String>, field: &str) -> Result<Option<DateTime<Utc>>, String> {
    value.as_deref().map(|v| parse_ts(v, field)).transpose()
}

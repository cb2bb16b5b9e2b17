//! Selection and cleaning steps shared by the analysis pipelines.

use std::collections::{BTreeMap, BTreeSet};

use chrono::Datelike;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use super::history::reconstruct_field_history;
use super::types::{Corpus, Issue, IssueLink, LinkDirection, Timestamp};
use super::CorpusError;

/// User stories of one tracker: issues typed "Story" whose description
/// contains "as a". Both checks are case-insensitive by default; the flag
/// exists because trackers are inconsistent about casing.
pub fn select_user_stories(
    corpus: &Corpus,
    tracker: &str,
    case_sensitive: bool,
) -> Result<Vec<(String, String)>, CorpusError> {
    if !corpus.has_tracker(tracker) {
        return Err(CorpusError::UnknownTracker(tracker.to_string()));
    }
    let needle = "as a";
    Ok(corpus
        .tracker_issues(tracker)
        .filter(|issue| issue.issue_type.eq_ignore_ascii_case("story"))
        .filter(|issue| {
            if case_sensitive {
                issue.description.contains(needle)
            } else {
                issue.description.to_lowercase().contains(needle)
            }
        })
        .map(|issue| (issue.key.clone(), issue.description.clone()))
        .collect())
}

/// Counts of issues removed by [`sample_and_clean`], per reason. An issue
/// failing several checks is counted once, under the first failing reason.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct CleaningReport {
    pub sampled_per_tracker: BTreeMap<String, usize>,
    pub removed_missing_created: usize,
    pub removed_impossible_dates: usize,
    pub removed_empty_description: usize,
}

impl CleaningReport {
    pub fn removed_total(&self) -> usize {
        self.removed_missing_created + self.removed_impossible_dates + self.removed_empty_description
    }
}

/// Draw up to `n_per_tracker` issues per tracker under a fixed seed, then
/// drop defective records: missing creation date, resolved before created
/// ("impossible dates"), or an empty current description.
///
/// Keys are sorted lexicographically before the seeded shuffle so the same
/// seed selects the same issues on any machine. Each tracker's generator is
/// derived from (seed, tracker name), so trackers sample independently.
pub fn sample_and_clean(corpus: &Corpus, n_per_tracker: usize, seed: u64) -> (Corpus, CleaningReport) {
    assert!(n_per_tracker >= 1, "sample size must be at least 1");
    let mut report = CleaningReport::default();
    let mut kept: Vec<Issue> = Vec::new();

    let tracker_names: Vec<String> = corpus.tracker_names().map(String::from).collect();
    for tracker in tracker_names {
        let mut keys: Vec<&str> = corpus
            .tracker_issues(&tracker)
            .map(|issue| issue.key.as_str())
            .collect();
        keys.sort_unstable();
        let mut rng = tracker_rng(seed, &tracker);
        keys.shuffle(&mut rng);
        let selected = keys.len().min(n_per_tracker);
        report
            .sampled_per_tracker
            .insert(tracker.clone(), selected);

        for key in keys.into_iter().take(n_per_tracker) {
            let issue = corpus.get(key).expect("sampled key exists");
            if issue.created.is_none() {
                report.removed_missing_created += 1;
                continue;
            }
            if let (Some(created), Some(resolved)) = (issue.created, issue.resolved) {
                if resolved < created {
                    report.removed_impossible_dates += 1;
                    continue;
                }
            }
            if issue.description.trim().is_empty() {
                report.removed_empty_description += 1;
                continue;
            }
            kept.push(issue.clone());
        }
    }

    let corpus = Corpus::from_issues(kept).expect("sampled issues keep unique keys");
    (corpus, report)
}

fn tracker_rng(seed: u64, tracker: &str) -> ChaCha20Rng {
    let mut hasher = Sha256::new();
    hasher.update(b"issuelens.sample.v1");
    hasher.update(seed.to_le_bytes());
    hasher.update(tracker.as_bytes());
    let digest = hasher.finalize();
    let mut seed_bytes = [0u8; 32];
    seed_bytes.copy_from_slice(&digest[..32]);
    ChaCha20Rng::from_seed(seed_bytes)
}

/// One row of the description-evolution table.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptionVersion {
    pub key: String,
    pub version: usize,
    pub at: Timestamp,
    pub text: String,
}

/// Every description version (creation-time one included) of every issue
/// with at least one description change, ordered by (key, version).
pub fn select_evolved_descriptions(corpus: &Corpus) -> Vec<DescriptionVersion> {
    let mut rows = Vec::new();
    for issue in corpus.issues() {
        let history = reconstruct_field_history(issue, "description")
            .expect("description is a known field");
        if history.entries.len() < 2 {
            continue;
        }
        for (version, entry) in history.entries.iter().enumerate() {
            rows.push(DescriptionVersion {
                key: issue.key.clone(),
                version,
                at: entry.at,
                text: entry.value.clone().unwrap_or_default(),
            });
        }
    }
    rows
}

/// Links selected for similarity analysis, plus the count of links whose
/// other endpoint is missing from the corpus.
#[derive(Debug)]
pub struct LinkedSelection<'a> {
    pub records: Vec<(IssueLink, &'a Issue, &'a Issue)>,
    pub dangling: usize,
}

/// One canonical record per link whose source issue was created in `year`
/// and whose both endpoints resolve within the corpus.
///
/// A pair stored on both endpoints (outward on one, inward on the other)
/// collapses to one record oriented source -> target along the outward
/// direction.
pub fn select_linked_issues(corpus: &Corpus, year: i32) -> LinkedSelection<'_> {
    let mut seen: BTreeSet<(String, String, String)> = BTreeSet::new();
    let mut records = Vec::new();
    let mut dangling = 0usize;

    for issue in corpus.issues() {
        for link in &issue.links {
            let (source_key, target_key) = match link.direction {
                LinkDirection::Outward => (issue.key.clone(), link.target_key.clone()),
                LinkDirection::Inward => (link.target_key.clone(), issue.key.clone()),
            };
            let pair_key = pair_identity(&link.link_type, &source_key, &target_key);
            if seen.contains(&pair_key) {
                continue;
            }
            seen.insert(pair_key);

            let (source, target) = match (corpus.get(&source_key), corpus.get(&target_key)) {
                (Some(s), Some(t)) => (s, t),
                _ => {
                    dangling += 1;
                    continue;
                }
            };
            match source.created {
                Some(created) if created.year() == year => {}
                _ => continue,
            }
            records.push((
                IssueLink {
                    link_type: link.link_type.clone(),
                    direction: LinkDirection::Outward,
                    source_key,
                    target_key,
                },
                source,
                target,
            ));
        }
    }

    LinkedSelection { records, dangling }
}

fn pair_identity(link_type: &str, a: &str, b: &str) -> (String, String, String) {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (link_type.to_lowercase(), lo.to_string(), hi.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{TimeZone, Utc};

    fn ts(year: i32, month: u32, day: u32) -> Timestamp {
        Utc.with_ymd_and_hms(year, month, day, 12, 0, 0).unwrap()
    }

    fn story(key: &str, description: &str) -> Issue {
        let mut issue = Issue::new(key, "redhat");
        issue.issue_type = "Story".to_string();
        issue.description = description.to_string();
        issue.created = Some(ts(2021, 1, 1));
        issue
    }

    #[test]
    fn user_story_filter_keeps_as_a_stories_only() {
        let mut bug = Issue::new("RH-3", "redhat");
        bug.issue_type = "Bug".to_string();
        bug.description = "as a user I see a crash".to_string();
        let corpus = Corpus::from_issues(vec![
            story("RH-1", "As a user, I want to log in"),
            story("RH-2", "Refactor the login module"),
            bug,
        ])
        .unwrap();
        let rows = select_user_stories(&corpus, "redhat", false).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0, "RH-1");
    }

    #[test]
    fn user_story_filter_rejects_unknown_tracker() {
        let corpus = Corpus::from_issues(vec![story("RH-1", "as a user")]).unwrap();
        assert!(matches!(
            select_user_stories(&corpus, "qt", false),
            Err(CorpusError::UnknownTracker(_))
        ));
    }

    #[test]
    fn case_sensitive_flag_is_honoured() {
        let corpus = Corpus::from_issues(vec![story("RH-1", "As a user, I want things")]).unwrap();
        assert_eq!(select_user_stories(&corpus, "redhat", false).unwrap().len(), 1);
        assert!(select_user_stories(&corpus, "redhat", true).unwrap().is_empty());
    }

    fn plain(key: &str, tracker: &str, created: Option<Timestamp>) -> Issue {
        let mut issue = Issue::new(key, tracker);
        issue.created = created;
        issue.description = "something to say".to_string();
        issue
    }

    #[test]
    fn sampling_is_deterministic_under_a_seed() {
        let issues: Vec<Issue> = (0..100)
            .map(|i| plain(&format!("AB-{i}"), "apache", Some(ts(2021, 1, 1))))
            .collect();
        let corpus = Corpus::from_issues(issues).unwrap();
        let (s1, _) = sample_and_clean(&corpus, 10, 42);
        let (s2, _) = sample_and_clean(&corpus, 10, 42);
        let k1: Vec<_> = s1.issues().map(|i| i.key.clone()).collect();
        let k2: Vec<_> = s2.issues().map(|i| i.key.clone()).collect();
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 10);

        let (s3, _) = sample_and_clean(&corpus, 10, 43);
        let k3: Vec<_> = s3.issues().map(|i| i.key.clone()).collect();
        assert_ne!(k1, k3, "different seeds should pick different samples");
    }

    #[test]
    fn impossible_dates_are_removed_with_reason() {
        let mut bad = plain("AB-1", "apache", Some(ts(2021, 5, 1)));
        bad.resolved = Some(ts(2021, 4, 1));
        let good = plain("AB-2", "apache", Some(ts(2021, 5, 1)));
        let corpus = Corpus::from_issues(vec![bad, good]).unwrap();
        let (cleaned, report) = sample_and_clean(&corpus, 10, 42);
        assert_eq!(cleaned.len(), 1);
        assert_eq!(report.removed_impossible_dates, 1);
    }

    #[test]
    fn small_trackers_keep_everything_before_cleaning() {
        let issues: Vec<Issue> = (0..5)
            .map(|i| plain(&format!("AB-{i}"), "apache", Some(ts(2021, 1, 1))))
            .collect();
        let corpus = Corpus::from_issues(issues).unwrap();
        let (sampled, report) = sample_and_clean(&corpus, 10, 42);
        assert_eq!(sampled.len(), 5);
        assert_eq!(report.sampled_per_tracker["apache"], 5);
    }

    #[test]
    fn cleaning_is_idempotent() {
        let mut missing = plain("AB-1", "apache", None);
        missing.description = "text".to_string();
        let mut empty_desc = plain("AB-2", "apache", Some(ts(2021, 1, 1)));
        empty_desc.description = "   ".to_string();
        let good = plain("AB-3", "apache", Some(ts(2021, 1, 1)));
        let corpus = Corpus::from_issues(vec![missing, empty_desc, good]).unwrap();

        let (first, report1) = sample_and_clean(&corpus, 10, 7);
        assert_eq!(report1.removed_missing_created, 1);
        assert_eq!(report1.removed_empty_description, 1);
        let (second, report2) = sample_and_clean(&first, 10, 7);
        assert_eq!(report2.removed_total(), 0);
        assert_eq!(first.len(), second.len());
    }

    fn with_description_change(key: &str) -> Issue {
        let mut issue = plain(key, "apache", Some(ts(2021, 1, 1)));
        issue.description = "new".to_string();
        issue.changelog = vec![crate::corpus::ChangeEvent {
            id: "h1".to_string(),
            author: "u".to_string(),
            created: ts(2021, 2, 1),
            items: vec![crate::corpus::ChangeItem {
                field: "description".to_string(),
                from_value: Some("old".to_string()),
                to_value: Some("new".to_string()),
            }],
        }];
        issue
    }

    #[test]
    fn evolved_descriptions_have_a_row_per_version() {
        let corpus = Corpus::from_issues(vec![
            with_description_change("AB-1"),
            plain("AB-2", "apache", Some(ts(2021, 1, 1))),
        ])
        .unwrap();
        let rows = select_evolved_descriptions(&corpus);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].version, 0);
        assert_eq!(rows[0].text, "old");
        assert_eq!(rows[1].version, 1);
        assert_eq!(rows[1].text, "new");
    }

    #[test]
    fn row_count_is_twice_the_issue_count_when_every_issue_has_one_change() {
        let issues: Vec<Issue> = (0..7).map(|i| with_description_change(&format!("AB-{i}"))).collect();
        let count = issues.len();
        let corpus = Corpus::from_issues(issues).unwrap();
        assert_eq!(select_evolved_descriptions(&corpus).len(), 2 * count);
    }

    fn linked(key: &str, created: Timestamp, link_type: &str, direction: LinkDirection, other: &str) -> Issue {
        let mut issue = plain(key, "hyperledger", Some(created));
        issue.links = vec![IssueLink {
            link_type: link_type.to_string(),
            direction,
            source_key: key.to_string(),
            target_key: other.to_string(),
        }];
        issue
    }

    #[test]
    fn mirror_links_collapse_to_one_record() {
        let a = linked("HL-1", ts(2021, 6, 1), "Duplicate", LinkDirection::Outward, "HL-2");
        let b = linked("HL-2", ts(2021, 6, 2), "Duplicate", LinkDirection::Inward, "HL-1");
        let corpus = Corpus::from_issues(vec![a, b]).unwrap();
        let selection = select_linked_issues(&corpus, 2021);
        assert_eq!(selection.records.len(), 1);
        let (link, source, target) = &selection.records[0];
        assert_eq!(link.source_key, "HL-1");
        assert_eq!(source.key, "HL-1");
        assert_eq!(target.key, "HL-2");
        assert_eq!(selection.dangling, 0);
    }

    #[test]
    fn dangling_links_are_excluded_and_counted() {
        let a = linked("HL-1", ts(2021, 6, 1), "Relate", LinkDirection::Outward, "HL-404");
        let corpus = Corpus::from_issues(vec![a]).unwrap();
        let selection = select_linked_issues(&corpus, 2021);
        assert!(selection.records.is_empty());
        assert_eq!(selection.dangling, 1);
    }

    #[test]
    fn year_boundary_excludes_december_of_previous_year() {
        let a = linked("HL-1", ts(2020, 12, 31), "Relate", LinkDirection::Outward, "HL-2");
        let b = plain("HL-2", "hyperledger", Some(ts(2021, 1, 1)));
        let corpus = Corpus::from_issues(vec![a, b]).unwrap();
        let selection = select_linked_issues(&corpus, 2021);
        assert!(selection.records.is_empty());
        assert_eq!(selection.dangling, 0);
    }
}

//! Hypernym lexicon: noun lemma -> is-a paths.
//!
//! Two sources load into the same structure: a simple TSV
//! (`lemma<TAB>LABEL>LABEL>...`, one line per sense, specific to general)
//! and the classic lexical-database noun files (`index.noun` +
//! `data.noun`), where paths follow the `@` / `@i` hypernym pointers up to
//! the root synset.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::LazyLock;

use super::AnnotateError;

static BUNDLED_TSV: &str = include_str!("../../assets/hypernyms.tsv");

static BUNDLED: LazyLock<HypernymLexicon> = LazyLock::new(|| {
    HypernymLexicon::from_tsv_contents(BUNDLED_TSV, "bundled hypernyms.tsv")
        .expect("bundled hypernym lexicon is valid")
});

/// Case-insensitive map from noun lemma to its hypernym paths.
#[derive(Debug, Clone, Default)]
pub struct HypernymLexicon {
    paths: BTreeMap<String, Vec<Vec<String>>>,
}

impl HypernymLexicon {
    /// The curated lexicon that ships with the toolkit.
    pub fn bundled() -> &'static HypernymLexicon {
        &BUNDLED
    }

    pub fn from_tsv_path(path: &Path) -> Result<Self, AnnotateError> {
        let text = std::fs::read_to_string(path).map_err(|source| AnnotateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_tsv_contents(&text, &path.display().to_string())
    }

    pub fn from_tsv_contents(contents: &str, location: &str) -> Result<Self, AnnotateError> {
        let mut paths: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
        for (line_no, line) in contents.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, path) = line.split_once('\t').ok_or_else(|| {
                AnnotateError::LexiconFormat {
                    location: format!("{location}:{}", line_no + 1),
                    message: "expected lemma<TAB>path".to_string(),
                }
            })?;
            let labels: Vec<String> = path
                .split('>')
                .map(|label| label.trim().to_uppercase())
                .collect();
            if labels.iter().any(|l| l.is_empty()) {
                return Err(AnnotateError::LexiconFormat {
                    location: format!("{location}:{}", line_no + 1),
                    message: "empty label in path".to_string(),
                });
            }
            paths
                .entry(lemma.trim().to_lowercase())
                .or_default()
                .push(labels);
        }
        Ok(HypernymLexicon { paths })
    }

    /// Load from a directory containing `index.noun` and `data.noun`.
    pub fn from_wordnet_dir(dir: &Path) -> Result<Self, AnnotateError> {
        let index_path = dir.join("index.noun");
        let data_path = dir.join("data.noun");
        let index = std::fs::read_to_string(&index_path).map_err(|source| AnnotateError::Io {
            path: index_path.display().to_string(),
            source,
        })?;
        let data = std::fs::read_to_string(&data_path).map_err(|source| AnnotateError::Io {
            path: data_path.display().to_string(),
            source,
        })?;
        Self::from_wordnet_contents(&index, &data)
    }

    fn from_wordnet_contents(index: &str, data: &str) -> Result<Self, AnnotateError> {
        let synsets = parse_data_noun(data)?;
        let mut memo: HashMap<u64, Vec<Vec<String>>> = HashMap::new();
        let mut paths: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();

        for (line_no, line) in index.lines().enumerate() {
            if line.starts_with(' ') || line.trim().is_empty() {
                continue; // license header
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 5 || fields[1] != "n" {
                continue;
            }
            let lemma = fields[0].replace('_', " ").to_lowercase();
            let synset_cnt: usize = fields[2].parse().map_err(|_| AnnotateError::LexiconFormat {
                location: format!("index.noun:{}", line_no + 1),
                message: "bad synset count".to_string(),
            })?;
            let offsets = &fields[fields.len() - synset_cnt..];
            for offset in offsets {
                let offset: u64 = offset.parse().map_err(|_| AnnotateError::LexiconFormat {
                    location: format!("index.noun:{}", line_no + 1),
                    message: format!("bad synset offset '{offset}'"),
                })?;
                let mut trail = Vec::new();
                for path in synset_paths(offset, &synsets, &mut memo, &mut trail) {
                    paths.entry(lemma.clone()).or_default().push(path);
                }
            }
        }
        Ok(HypernymLexicon { paths })
    }

    /// All hypernym paths for the lemma's noun senses; empty when unknown.
    pub fn paths(&self, lemma: &str) -> Vec<Vec<String>> {
        self.paths
            .get(&lemma.to_lowercase())
            .cloned()
            .unwrap_or_default()
    }

    /// True when any sense of the lemma has any of `labels` on its path.
    /// This is the any-sense rule: one action-like sense qualifies the noun.
    pub fn any_path_contains(&self, lemma: &str, labels: &[&str]) -> bool {
        self.paths
            .get(&lemma.to_lowercase())
            .is_some_and(|paths| {
                paths
                    .iter()
                    .any(|path| path.iter().any(|l| labels.iter().any(|w| l == w)))
            })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

struct Synset {
    label: String,
    hypernyms: Vec<u64>,
}

fn parse_data_noun(data: &str) -> Result<HashMap<u64, Synset>, AnnotateError> {
    let mut synsets = HashMap::new();
    for (line_no, line) in data.lines().enumerate() {
        if line.starts_with(' ') || line.trim().is_empty() {
            continue;
        }
        let body = line.split('|').next().unwrap_or(line);
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() < 4 {
            continue;
        }
        let err = |message: String| AnnotateError::LexiconFormat {
            location: format!("data.noun:{}", line_no + 1),
            message,
        };
        let offset: u64 = fields[0]
            .parse()
            .map_err(|_| err(format!("bad offset '{}'", fields[0])))?;
        let w_cnt = usize::from_str_radix(fields[3], 16)
            .map_err(|_| err(format!("bad word count '{}'", fields[3])))?;
        if w_cnt == 0 || fields.len() < 4 + 2 * w_cnt + 1 {
            return Err(err("truncated synset line".to_string()));
        }
        let label = fields[4].replace('_', " ").to_uppercase();
        let p_cnt_idx = 4 + 2 * w_cnt;
        let p_cnt: usize = fields[p_cnt_idx]
            .parse()
            .map_err(|_| err(format!("bad pointer count '{}'", fields[p_cnt_idx])))?;
        let mut hypernyms = Vec::new();
        for p in 0..p_cnt {
            let base = p_cnt_idx + 1 + p * 4;
            if base + 3 >= fields.len() {
                return Err(err("truncated pointer list".to_string()));
            }
            let symbol = fields[base];
            if (symbol == "@" || symbol == "@i") && fields[base + 2] == "n" {
                let target: u64 = fields[base + 1]
                    .parse()
                    .map_err(|_| err(format!("bad pointer offset '{}'", fields[base + 1])))?;
                hypernyms.push(target);
            }
        }
        synsets.insert(offset, Synset { label, hypernyms });
    }
    Ok(synsets)
}

/// Paths from a synset to the root, one per hypernym branch. `trail` guards
/// against pointer cycles in malformed databases.
fn synset_paths(
    offset: u64,
    synsets: &HashMap<u64, Synset>,
    memo: &mut HashMap<u64, Vec<Vec<String>>>,
    trail: &mut Vec<u64>,
) -> Vec<Vec<String>> {
    if let Some(done) = memo.get(&offset) {
        return done.clone();
    }
    if trail.contains(&offset) {
        return Vec::new();
    }
    let Some(synset) = synsets.get(&offset) else {
        return Vec::new();
    };
    trail.push(offset);
    let mut paths = Vec::new();
    if synset.hypernyms.is_empty() {
        paths.push(vec![synset.label.clone()]);
    } else {
        for &parent in &synset.hypernyms {
            for mut parent_path in synset_paths(parent, synsets, memo, trail) {
                parent_path.insert(0, synset.label.clone());
                paths.push(parent_path);
            }
        }
        if paths.is_empty() {
            paths.push(vec![synset.label.clone()]);
        }
    }
    trail.pop();
    memo.insert(offset, paths.clone());
    paths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lexicon_loads() {
        let lexicon = HypernymLexicon::bundled();
        assert!(!lexicon.is_empty());
    }

    #[test]
    fn disconnection_is_action_like_in_the_shipped_lexicon() {
        // oracle: manual lookup in assets/hypernyms.tsv
        let lexicon = HypernymLexicon::bundled();
        assert!(lexicon.any_path_contains("disconnection", &["ACT", "EVENT"]));
    }

    #[test]
    fn table_has_no_action_sense_in_the_shipped_lexicon() {
        let lexicon = HypernymLexicon::bundled();
        let paths = lexicon.paths("table");
        assert!(!paths.is_empty(), "'table' should be in the shipped lexicon");
        assert!(!lexicon.any_path_contains("table", &["EVENT", "PROCESS", "ACT"]));
    }

    #[test]
    fn unknown_lemma_has_no_paths() {
        let lexicon = HypernymLexicon::bundled();
        assert!(lexicon.paths("zzxqv").is_empty());
        assert!(!lexicon.any_path_contains("zzxqv", &["ACT"]));
    }

    #[test]
    fn lookup_is_case_insensitive() {
        let lexicon = HypernymLexicon::bundled();
        assert_eq!(
            lexicon.any_path_contains("Disconnection", &["ACT"]),
            lexicon.any_path_contains("disconnection", &["ACT"])
        );
    }

    #[test]
    fn tsv_rejects_missing_tab() {
        let err = HypernymLexicon::from_tsv_contents("word without tab", "t").unwrap_err();
        assert!(matches!(err, AnnotateError::LexiconFormat { .. }));
    }

    #[test]
    fn tsv_multiple_senses_accumulate() {
        let tsv = "bank\tBANK>INSTITUTION>ENTITY\nbank\tBANK>SLOPE>LOCATION>ENTITY\n";
        let lexicon = HypernymLexicon::from_tsv_contents(tsv, "t").unwrap();
        assert_eq!(lexicon.paths("bank").len(), 2);
    }

    #[test]
    fn wordnet_format_paths_follow_hypernym_pointers() {
        // three-synset chain: disconnection -> act -> entity (root)
        let index = "\
  1 license line\n\
disconnection n 1 1 @ 1 0 00100\n\
act n 1 1 ~ 1 0 00200\n\
entity n 1 0 1 0 00300\n";
        let data = "\
  1 license line\n\
00100 04 n 01 disconnection 0 001 @ 00200 n 0000 | the act of disconnecting\n\
00200 04 n 01 act 0 000 | something done\n\
00300 03 n 01 entity 0 000 | that which exists\n";
        let lexicon = HypernymLexicon::from_wordnet_contents(index, data).unwrap();
        let paths = lexicon.paths("disconnection");
        assert_eq!(paths, vec![vec!["DISCONNECTION".to_string(), "ACT".to_string()]]);
        assert!(lexicon.any_path_contains("disconnection", &["ACT"]));
    }

    #[test]
    fn wordnet_cycles_do_not_hang() {
        let index = "a n 1 1 @ 1 0 00100\n";
        let data = "\
00100 04 n 01 a 0 001 @ 00200 n 0000 | x\n\
00200 04 n 01 b 0 001 @ 00100 n 0000 | y\n";
        let lexicon = HypernymLexicon::from_wordnet_contents(index, data).unwrap();
        // the cycle collapses; lookup still terminates
        let _ = lexicon.paths("a");
    }
}

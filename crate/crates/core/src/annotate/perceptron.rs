//! Averaged perceptron sequence tagger.
//!
//! The classic greedy left-to-right tagger: hand-rolled context features,
//! one weight vector per tag, weights averaged over all updates at the end
//! of training. Scoring is deterministic; ties break toward the
//! lexicographically smaller tag so identical input always tags identically.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::AnnotateError;

const WEIGHTS_FORMAT_VERSION: u32 = 1;
const START: [&str; 2] = ["-START2-", "-START-"];
const END: [&str; 2] = ["-END-", "-END2-"];

/// Trained model: per-feature tag weights plus a lookup for words that were
/// unambiguous in the training data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerceptronModel {
    version: u32,
    classes: BTreeSet<String>,
    /// Unambiguous frequent words, keyed by normalized form.
    tagdict: BTreeMap<String, String>,
    /// feature -> tag -> weight
    weights: BTreeMap<String, BTreeMap<String, f64>>,
}

impl PerceptronModel {
    /// Tag a tokenized sentence. One tag per token.
    pub fn tag(&self, tokens: &[String]) -> Vec<String> {
        self.tag_with_dict(tokens, &|_| None)
    }

    /// Tag a sentence, consulting `dict` for each raw word first. Words the
    /// dictionary decides still feed the sequence context of their
    /// neighbours.
    pub fn tag_with_dict(
        &self,
        tokens: &[String],
        dict: &dyn Fn(&str) -> Option<String>,
    ) -> Vec<String> {
        let context = make_context(tokens);
        let mut tags = Vec::with_capacity(tokens.len());
        let mut prev = START[1].to_string();
        let mut prev2 = START[0].to_string();
        for (i, token) in tokens.iter().enumerate() {
            let normalized = normalize(token);
            let tag = match dict(token) {
                Some(tag) => tag,
                None => match self.tagdict.get(&normalized) {
                    Some(tag) => tag.clone(),
                    None => {
                        let features = features(i, &context, &prev, &prev2);
                        self.predict(&features)
                    }
                },
            };
            prev2 = std::mem::replace(&mut prev, tag.clone());
            tags.push(tag);
        }
        tags
    }

    fn predict(&self, features: &[String]) -> String {
        let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
        for feature in features {
            if let Some(tag_weights) = self.weights.get(feature) {
                for (tag, weight) in tag_weights {
                    *scores.entry(tag.as_str()).or_insert(0.0) += weight;
                }
            }
        }
        // BTreeMap iteration is ascending, so on equal scores the
        // lexicographically smaller tag wins.
        let mut best: Option<(&str, f64)> = None;
        for (tag, score) in &scores {
            match best {
                Some((_, s)) if *score <= s => {}
                _ => best = Some((tag, *score)),
            }
        }
        best.map(|(tag, _)| tag.to_string())
            .or_else(|| self.classes.iter().next().cloned())
            .unwrap_or_else(|| "NN".to_string())
    }

    /// Train on tagged sentences. Deterministic for a fixed seed: sentences
    /// are shuffled with a seeded generator each iteration.
    pub fn train(sentences: &[Vec<(String, String)>], iterations: usize, seed: u64) -> Self {
        let mut trainer = Trainer::default();
        let mut tagdict = BTreeMap::new();
        let mut classes = BTreeSet::new();
        build_tagdict(sentences, &mut tagdict, &mut classes);

        let mut order: Vec<usize> = (0..sentences.len()).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        for _ in 0..iterations {
            for &si in &order {
                let sentence = &sentences[si];
                let tokens: Vec<String> = sentence.iter().map(|(w, _)| w.clone()).collect();
                let context = make_context(&tokens);
                let mut prev = START[1].to_string();
                let mut prev2 = START[0].to_string();
                for (i, (word, truth)) in sentence.iter().enumerate() {
                    let normalized = normalize(word);
                    let guess = match tagdict.get(&normalized) {
                        Some(tag) => tag.clone(),
                        None => {
                            let feats = features(i, &context, &prev, &prev2);
                            let guess = trainer.predict(&feats, &classes);
                            trainer.update(truth, &guess, &feats);
                            guess
                        }
                    };
                    prev2 = std::mem::replace(&mut prev, guess);
                }
            }
            order.shuffle(&mut rng);
        }

        let weights = trainer.averaged();
        PerceptronModel {
            version: WEIGHTS_FORMAT_VERSION,
            classes,
            tagdict,
            weights,
        }
    }

    /// Accuracy against a tagged reference, for training-time reporting.
    pub fn evaluate(&self, sentences: &[Vec<(String, String)>]) -> f64 {
        let mut correct = 0usize;
        let mut total = 0usize;
        for sentence in sentences {
            let tokens: Vec<String> = sentence.iter().map(|(w, _)| w.clone()).collect();
            let tags = self.tag(&tokens);
            for ((_, truth), tag) in sentence.iter().zip(&tags) {
                total += 1;
                if truth == tag {
                    correct += 1;
                }
            }
        }
        if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, AnnotateError> {
        let model: PerceptronModel =
            serde_json::from_str(json).map_err(|e| AnnotateError::WeightsFormat(e.to_string()))?;
        if model.version != WEIGHTS_FORMAT_VERSION {
            return Err(AnnotateError::WeightsFormat(format!(
                "unsupported weight file version {} (expected {})",
                model.version, WEIGHTS_FORMAT_VERSION
            )));
        }
        Ok(model)
    }

    pub fn load(path: &Path) -> Result<Self, AnnotateError> {
        let json = std::fs::read_to_string(path).map_err(|source| AnnotateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&json)
    }
}

/// Frequent single-tag words get a direct lookup. The corpus is small, so
/// the bar is full agreement over at least three occurrences.
fn build_tagdict(
    sentences: &[Vec<(String, String)>],
    tagdict: &mut BTreeMap<String, String>,
    classes: &mut BTreeSet<String>,
) {
    let mut counts: HashMap<String, HashMap<String, usize>> = HashMap::new();
    for sentence in sentences {
        for (word, tag) in sentence {
            classes.insert(tag.clone());
            *counts
                .entry(normalize(word))
                .or_default()
                .entry(tag.clone())
                .or_insert(0) += 1;
        }
    }
    for (word, tag_counts) in counts {
        let total: usize = tag_counts.values().sum();
        if total < 3 || tag_counts.len() != 1 {
            continue;
        }
        let tag = tag_counts.into_keys().next().expect("single tag");
        tagdict.insert(word, tag);
    }
}

fn normalize(word: &str) -> String {
    if word.chars().all(|c| c.is_ascii_digit()) && !word.is_empty() {
        if word.len() == 4 {
            "!YEAR".to_string()
        } else {
            "!DIGIT".to_string()
        }
    } else {
        word.to_lowercase()
    }
}

fn make_context(tokens: &[String]) -> Vec<String> {
    let mut context = Vec::with_capacity(tokens.len() + 4);
    context.extend(START.iter().map(|s| s.to_string()));
    context.extend(tokens.iter().map(|t| normalize(t)));
    context.extend(END.iter().map(|s| s.to_string()));
    context
}

fn suffix(word: &str, n: usize) -> &str {
    let start = word.char_indices().rev().nth(n - 1).map_or(0, |(i, _)| i);
    &word[start..]
}

fn prefix(word: &str) -> &str {
    word.char_indices()
        .nth(1)
        .map_or(word, |(i, _)| &word[..i])
}

fn features(i: usize, context: &[String], prev: &str, prev2: &str) -> Vec<String> {
    let ci = i + 2; // account for the two start pads
    let word = &context[ci];
    vec![
        "bias".to_string(),
        format!("i suffix {}", suffix(word, 3)),
        format!("i pref1 {}", prefix(word)),
        format!("i-1 tag {prev}"),
        format!("i-2 tag {prev2}"),
        format!("i tag+i-2 tag {prev} {prev2}"),
        format!("i word {word}"),
        format!("i-1 tag+i word {prev} {word}"),
        format!("i-1 word {}", context[ci - 1]),
        format!("i-1 suffix {}", suffix(&context[ci - 1], 3)),
        format!("i-2 word {}", context[ci - 2]),
        format!("i+1 word {}", context[ci + 1]),
        format!("i+1 suffix {}", suffix(&context[ci + 1], 3)),
        format!("i+2 word {}", context[ci + 2]),
    ]
}

/// Accumulates raw weights and the bookkeeping needed for averaging.
#[derive(Default)]
struct Trainer {
    weights: HashMap<String, HashMap<String, f64>>,
    totals: HashMap<(String, String), f64>,
    stamps: HashMap<(String, String), usize>,
    instances: usize,
}

impl Trainer {
    fn predict(&self, features: &[String], classes: &BTreeSet<String>) -> String {
        let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
        for feature in features {
            if let Some(tag_weights) = self.weights.get(feature) {
                for (tag, weight) in tag_weights {
                    *scores.entry(tag.as_str()).or_insert(0.0) += weight;
                }
            }
        }
        let mut best: Option<(&str, f64)> = None;
        for class in classes {
            let score = scores.get(class.as_str()).copied().unwrap_or(0.0);
            match best {
                Some((_, s)) if score <= s => {}
                _ => best = Some((class.as_str(), score)),
            }
        }
        best.map(|(tag, _)| tag.to_string()).unwrap_or_default()
    }

    fn update(&mut self, truth: &str, guess: &str, features: &[String]) {
        self.instances += 1;
        if truth == guess {
            return;
        }
        for feature in features {
            self.bump(feature, truth, 1.0);
            self.bump(feature, guess, -1.0);
        }
    }

    fn bump(&mut self, feature: &str, tag: &str, delta: f64) {
        let key = (feature.to_string(), tag.to_string());
        let current = self
            .weights
            .get(feature)
            .and_then(|m| m.get(tag))
            .copied()
            .unwrap_or(0.0);
        let stamp = self.stamps.get(&key).copied().unwrap_or(0);
        *self.totals.entry(key.clone()).or_insert(0.0) += (self.instances - stamp) as f64 * current;
        self.stamps.insert(key, self.instances);
        self.weights
            .entry(feature.to_string())
            .or_default()
            .insert(tag.to_string(), current + delta);
    }

    fn averaged(self) -> BTreeMap<String, BTreeMap<String, f64>> {
        let mut averaged: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
        if self.instances == 0 {
            return averaged;
        }
        for (feature, tag_weights) in &self.weights {
            for (tag, weight) in tag_weights {
                let key = (feature.clone(), tag.clone());
                let stamp = self.stamps.get(&key).copied().unwrap_or(0);
                let total = self.totals.get(&key).copied().unwrap_or(0.0)
                    + (self.instances - stamp) as f64 * weight;
                let mean = (total / self.instances as f64 * 1000.0).round() / 1000.0;
                if mean != 0.0 {
                    averaged
                        .entry(feature.clone())
                        .or_default()
                        .insert(tag.clone(), mean);
                }
            }
        }
        averaged
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_training() -> Vec<Vec<(String, String)>> {
        let data = [
            "the/DT dog/NN runs/VBZ",
            "the/DT cat/NN runs/VBZ",
            "a/DT dog/NN barked/VBD",
            "dogs/NNS bark/VBP",
            "the/DT dog/NN barked/VBD",
            "a/DT cat/NN sleeps/VBZ",
        ];
        data.iter()
            .map(|s| {
                s.split(' ')
                    .map(|pair| {
                        let (w, t) = pair.split_once('/').unwrap();
                        (w.to_string(), t.to_string())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn learns_a_toy_corpus() {
        let model = PerceptronModel::train(&toy_training(), 8, 1);
        let tags = model.tag(&["the".into(), "dog".into(), "runs".into()]);
        assert_eq!(tags, vec!["DT", "NN", "VBZ"]);
    }

    #[test]
    fn training_and_tagging_are_deterministic() {
        let a = PerceptronModel::train(&toy_training(), 8, 1);
        let b = PerceptronModel::train(&toy_training(), 8, 1);
        assert_eq!(a.to_json(), b.to_json());
        let sentence: Vec<String> = vec!["a".into(), "cat".into(), "barked".into()];
        assert_eq!(a.tag(&sentence), b.tag(&sentence));
    }

    #[test]
    fn weight_file_round_trips() {
        let model = PerceptronModel::train(&toy_training(), 4, 1);
        let restored = PerceptronModel::from_json(&model.to_json()).unwrap();
        assert_eq!(model.to_json(), restored.to_json());
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let model = PerceptronModel::train(&toy_training(), 1, 1);
        let json = model.to_json().replace("\"version\":1", "\"version\":99");
        assert!(matches!(
            PerceptronModel::from_json(&json),
            Err(AnnotateError::WeightsFormat(_))
        ));
    }

    #[test]
    fn digit_normalization_feeds_the_dictionary() {
        assert_eq!(normalize("2021"), "!YEAR");
        assert_eq!(normalize("10"), "!DIGIT");
        assert_eq!(normalize("WordNet"), "wordnet");
    }
}

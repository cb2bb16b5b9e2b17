//! Requirements-quality rule engine.
//!
//! Six rules detect subjective language and nominalisations in issue text.
//! Each rule lives behind the [`LintRule`] trait, is registered by name,
//! and is selected at runtime, so pipelines can run any subset. All rules
//! are pure functions of (text, config, lexicons); false positives are part
//! of the deal and findings are meant for human review.

mod passive;
mod rules;

pub use passive::PassiveVoiceRule;
pub use rules::{
    DangerousPluralRule, DerivedNominalRule, GerundiveNominalRule, InsideBehaviourRule,
    UnclearInclusionRule,
};

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotate::{
    pos_tag, render_tagged_stream, AnnotateError, HypernymLexicon, TaggedStream, TaggedToken,
    Tagger,
};
use crate::corpus::Issue;
use crate::textprep::{
    char_slice, split_sentences, strip_markup, CleanText, Sentence, DEFAULT_ABBREVIATIONS,
};

#[derive(Debug, Error)]
pub enum LintError {
    #[error("unknown lint rule '{0}'")]
    UnknownRule(String),
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
}

/// The six rule identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    DangerousPlural,
    InsideBehaviour,
    UnclearInclusion,
    PassiveVoice,
    DerivedNominal,
    GerundiveNominal,
}

impl RuleId {
    pub const ALL: [RuleId; 6] = [
        RuleId::DangerousPlural,
        RuleId::InsideBehaviour,
        RuleId::UnclearInclusion,
        RuleId::PassiveVoice,
        RuleId::DerivedNominal,
        RuleId::GerundiveNominal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::DangerousPlural => "dangerous_plural",
            RuleId::InsideBehaviour => "inside_behaviour",
            RuleId::UnclearInclusion => "unclear_inclusion",
            RuleId::PassiveVoice => "passive_voice",
            RuleId::DerivedNominal => "derived_nominal",
            RuleId::GerundiveNominal => "gerundive_nominal",
        }
    }
}

impl FromStr for RuleId {
    type Err = LintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| LintError::UnknownRule(s.to_string()))
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which issue field a finding was produced from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Summary,
    Description,
    Comment,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Summary => "summary",
            FieldKind::Description => "description",
            FieldKind::Comment => "comment",
        }
    }
}

/// One lint hit. `start`/`end` are character offsets into the ORIGINAL
/// field text and `matched_text` always equals the text at that span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub rule: RuleId,
    pub issue_key: String,
    pub field: FieldKind,
    /// Comment id when `field` is `Comment`.
    pub source_id: Option<String>,
    pub start: usize,
    pub end: usize,
    pub matched_text: String,
    pub message: String,
    /// Reserved for future scoring; constant for now.
    pub confidence_note: &'static str,
}

pub const CONFIDENCE_NOTE: &str = "unscored";

/// Word lists and switches for the lexical rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleConfig {
    pub dangerous_plural_words: BTreeSet<String>,
    pub inside_behaviour_words: BTreeSet<String>,
    /// Stored without the leading dash ("tion", not "-tion").
    pub derived_suffixes: Vec<String>,
    pub case_insensitive: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        let dangerous = ["few", "little", "many", "much", "every", "all", "some", "most", "several"];
        let inside = ["until", "during", "after", "before", "while"];
        let suffixes = ["tion", "sion", "ment", "ism", "ty", "ance", "ence"];
        RuleConfig {
            dangerous_plural_words: dangerous.iter().map(|s| s.to_string()).collect(),
            inside_behaviour_words: inside.iter().map(|s| s.to_string()).collect(),
            derived_suffixes: suffixes.iter().map(|s| s.to_string()).collect(),
            case_insensitive: true,
        }
    }
}

impl RuleConfig {
    /// Accepts suffixes written with or without the leading dash.
    pub fn normalize_suffixes(&mut self) {
        for suffix in &mut self.derived_suffixes {
            if let Some(stripped) = suffix.strip_prefix('-') {
                *suffix = stripped.to_string();
            }
        }
    }
}

/// One field's text with every annotation layer the rules need.
pub struct AnnotatedText {
    pub raw: String,
    pub clean: CleanText,
    pub sentences: Vec<Sentence>,
    /// Parallel to `sentences`; token words sanitized for stream encoding.
    pub tagged: Vec<Vec<TaggedToken>>,
    /// Parallel to `sentences`.
    pub streams: Vec<TaggedStream>,
}

/// What a rule sees.
pub struct RuleContext<'a> {
    pub text: &'a AnnotatedText,
    pub config: &'a RuleConfig,
    pub lexicon: &'a HypernymLexicon,
}

/// A rule hit in CLEAN-text character offsets; the engine maps it back to
/// the original text.
#[derive(Debug, Clone)]
pub struct RuleMatch {
    pub start: usize,
    pub end: usize,
    pub message: String,
}

/// A runtime-selectable lint rule.
pub trait LintRule: Send + Sync {
    fn id(&self) -> RuleId;
    fn check(&self, ctx: &RuleContext<'_>) -> Result<Vec<RuleMatch>, LintError>;
}

/// All rules, in canonical order.
pub fn all_rules() -> Vec<Box<dyn LintRule>> {
    vec![
        Box::new(DangerousPluralRule),
        Box::new(InsideBehaviourRule),
        Box::new(UnclearInclusionRule),
        Box::new(PassiveVoiceRule),
        Box::new(DerivedNominalRule),
        Box::new(GerundiveNominalRule),
    ]
}

/// The selected subset, resolved by id.
pub fn rules_for(ids: &[RuleId]) -> Vec<Box<dyn LintRule>> {
    all_rules()
        .into_iter()
        .filter(|rule| ids.contains(&rule.id()))
        .collect()
}

/// Rule engine bound to a tagger, a hypernym lexicon, and a configuration.
pub struct LintEngine<'a> {
    tagger: &'a dyn Tagger,
    lexicon: &'a HypernymLexicon,
    config: RuleConfig,
    rules: Vec<Box<dyn LintRule>>,
    abbreviations: Vec<String>,
}

impl<'a> LintEngine<'a> {
    pub fn new(
        tagger: &'a dyn Tagger,
        lexicon: &'a HypernymLexicon,
        mut config: RuleConfig,
        selection: &[RuleId],
    ) -> Self {
        config.normalize_suffixes();
        LintEngine {
            tagger,
            lexicon,
            config,
            rules: rules_for(selection),
            abbreviations: DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn with_abbreviations(mut self, abbreviations: Vec<String>) -> Self {
        self.abbreviations = abbreviations;
        self
    }

    pub fn config(&self) -> &RuleConfig {
        &self.config
    }

    /// Strip, split, tokenize, tag, and render one field text.
    pub fn annotate(&self, raw: &str) -> Result<AnnotatedText, LintError> {
        let clean = strip_markup(raw);
        let sentences = split_sentences(&clean, &self.abbreviations);
        let mut tagged = Vec::with_capacity(sentences.len());
        let mut streams = Vec::with_capacity(sentences.len());
        for sentence in &sentences {
            let words: Vec<String> = sentence
                .tokens
                .iter()
                .map(|t| sanitize_word(&t.text))
                .collect();
            let tokens = if words.is_empty() {
                Vec::new()
            } else {
                pos_tag(self.tagger, &words)
            };
            let stream = render_tagged_stream(&tokens)?;
            tagged.push(tokens);
            streams.push(stream);
        }
        Ok(AnnotatedText {
            raw: raw.to_string(),
            clean,
            sentences,
            tagged,
            streams,
        })
    }

    /// Run the selected rules over one field text.
    pub fn lint_text(
        &self,
        issue_key: &str,
        field: FieldKind,
        source_id: Option<&str>,
        raw: &str,
    ) -> Result<Vec<Finding>, LintError> {
        let annotated = self.annotate(raw)?;
        let ctx = RuleContext {
            text: &annotated,
            config: &self.config,
            lexicon: self.lexicon,
        };
        let mut findings = Vec::new();
        for rule in &self.rules {
            for hit in rule.check(&ctx)? {
                if hit.end <= hit.start {
                    continue;
                }
                let orig_start = annotated.clean.to_original(hit.start);
                let orig_end = annotated.clean.to_original(hit.end - 1) + 1;
                let matched_text = char_slice(raw, orig_start, orig_end);
                findings.push(Finding {
                    rule: rule.id(),
                    issue_key: issue_key.to_string(),
                    field,
                    source_id: source_id.map(String::from),
                    start: orig_start,
                    end: orig_end,
                    matched_text,
                    message: hit.message,
                    confidence_note: CONFIDENCE_NOTE,
                });
            }
        }
        Ok(findings)
    }

    /// Run the selected rules over an issue's summary and description, and
    /// optionally its comments. Findings come back sorted by
    /// (field, source, span).
    pub fn lint_issue(&self, issue: &Issue, include_comments: bool) -> Result<Vec<Finding>, LintError> {
        let mut findings = Vec::new();
        findings.extend(self.lint_text(&issue.key, FieldKind::Summary, None, &issue.summary)?);
        findings.extend(self.lint_text(
            &issue.key,
            FieldKind::Description,
            None,
            &issue.description,
        )?);
        if include_comments {
            for comment in &issue.comments {
                findings.extend(self.lint_text(
                    &issue.key,
                    FieldKind::Comment,
                    Some(&comment.id),
                    &comment.body,
                )?);
            }
        }
        findings.sort_by(|a, b| {
            (a.field, &a.source_id, a.start, a.end, a.rule)
                .cmp(&(b.field, &b.source_id, b.start, b.end, b.rule))
        });
        Ok(findings)
    }
}

/// The stream delimiter cannot survive inside a token.
fn sanitize_word(word: &str) -> String {
    if word.contains('°') {
        word.replace('°', "·")
    } else {
        word.to_string()
    }
}

/// Helper shared by rules: iterate sentences with their tagged tokens.
pub(crate) fn sentences_with_tags<'c>(
    ctx: &'c RuleContext<'_>,
) -> impl Iterator<Item = (&'c Sentence, &'c [TaggedToken], &'c TaggedStream)> {
    ctx.text
        .sentences
        .iter()
        .zip(&ctx.text.tagged)
        .zip(&ctx.text.streams)
        .map(|((s, t), st)| (s, t.as_slice(), st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::BundledTagger;

    fn engine<'a>(tagger: &'a BundledTagger, lexicon: &'a HypernymLexicon) -> LintEngine<'a> {
        LintEngine::new(tagger, lexicon, RuleConfig::default(), &RuleId::ALL)
    }

    #[test]
    fn rule_ids_round_trip_through_names() {
        for id in RuleId::ALL {
            assert_eq!(id.name().parse::<RuleId>().unwrap(), id);
        }
        assert!("bogus_rule".parse::<RuleId>().is_err());
    }

    #[test]
    fn empty_description_lints_summary_only() {
        let tagger = BundledTagger::new();
        let lexicon = HypernymLexicon::bundled();
        let engine = engine(&tagger, &lexicon);
        let mut issue = Issue::new("AB-1", "apache");
        issue.summary = "reliability issues during regular Motions".to_string();
        issue.description = String::new();
        let findings = engine.lint_issue(&issue, false).unwrap();
        assert!(!findings.is_empty());
        assert!(findings.iter().all(|f| f.field == FieldKind::Summary));
    }

    #[test]
    fn linting_twice_is_identical() {
        let tagger = BundledTagger::new();
        let lexicon = HypernymLexicon::bundled();
        let engine = engine(&tagger, &lexicon);
        let mut issue = Issue::new("AB-1", "apache");
        issue.summary = "the gate was opened".to_string();
        issue.description = "no need to provide every single detail".to_string();
        let first = engine.lint_issue(&issue, false).unwrap();
        let second = engine.lint_issue(&issue, false).unwrap();
        assert_eq!(first, second);
        assert!(!first.is_empty());
    }

    #[test]
    fn no_rules_selected_means_no_findings() {
        let tagger = BundledTagger::new();
        let lexicon = HypernymLexicon::bundled();
        let engine = LintEngine::new(&tagger, &lexicon, RuleConfig::default(), &[]);
        let mut issue = Issue::new("AB-1", "apache");
        issue.summary = "every single detail during the run was opened".to_string();
        assert!(engine.lint_issue(&issue, false).unwrap().is_empty());
    }

    #[test]
    fn findings_snap_back_to_original_offsets_across_markup() {
        let tagger = BundledTagger::new();
        let lexicon = HypernymLexicon::bundled();
        let engine = engine(&tagger, &lexicon);
        let raw = "See {code}x=1{code} every detail";
        let findings = engine
            .lint_text("AB-1", FieldKind::Description, None, raw)
            .unwrap();
        let every = findings
            .iter()
            .find(|f| f.rule == RuleId::DangerousPlural)
            .expect("'every' is flagged");
        assert_eq!(every.matched_text, "every");
        assert_eq!(&raw[every.start..every.end], "every");
    }
}

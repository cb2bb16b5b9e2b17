//! Grammatical-role classification for VBG tokens.
//!
//! A deterministic rule cascade over POS context stands in for a dependency
//! parse. It decides whether an -ing form is doing verb work (root verb,
//! auxiliary, modifier, compound) or is a nominal. The cascade is an
//! approximation; its disagreement rate against a reference parse is
//! measured in the acceptance tests and the known misses are listed in
//! `docs/vbg_known_limitations.md`.

use super::stream::TaggedToken;
use super::AnnotateError;

/// The six roles a VBG token can take. Exactly one applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VbgRole {
    RootVerb,
    Auxiliary,
    AdverbialModifier,
    Compound,
    ClausalModifierOfNoun,
    Nominal,
}

impl VbgRole {
    /// Everything except `Nominal` means the -ing form works as a verb or
    /// modifier and is therefore not a nominalisation.
    pub fn is_nominal(self) -> bool {
        matches!(self, VbgRole::Nominal)
    }

    pub fn name(self) -> &'static str {
        match self {
            VbgRole::RootVerb => "root_verb",
            VbgRole::Auxiliary => "auxiliary",
            VbgRole::AdverbialModifier => "adverbial_modifier",
            VbgRole::Compound => "compound",
            VbgRole::ClausalModifierOfNoun => "clausal_modifier_of_noun",
            VbgRole::Nominal => "nominal",
        }
    }
}

/// Words that introduce an adverbial/clausal use of a following -ing form.
const CLAUSAL_INTRODUCERS: &[&str] = &["while", "when", "by"];

/// Classify the VBG token at `index`.
///
/// Cascade, first rule that fires wins:
/// 1. lemma be/have followed by a verb  -> auxiliary ("being tested")
/// 2. preceded (adverbs skipped) by a form of "be" -> root verb ("is running",
///    "will be running", "has been failing")
/// 3. preceded by a comma or while/when/by -> adverbial modifier
/// 4. determiner + VBG + noun -> compound ("the running water"); with a
///    possessive determiner instead -> clausal modifier
/// 5. otherwise -> nominal
pub fn classify_vbg_role(tagged: &[TaggedToken], index: usize) -> Result<VbgRole, AnnotateError> {
    let token = tagged.get(index).ok_or(AnnotateError::IndexOutOfRange {
        index,
        len: tagged.len(),
    })?;
    if token.pos != "VBG" {
        return Err(AnnotateError::NotVbg {
            index,
            len: tagged.len(),
        });
    }

    // rule 1: the VBG itself is an auxiliary
    if matches!(token.lemma.as_str(), "be" | "have") {
        if let Some(next) = tagged.get(index + 1) {
            if next.pos.starts_with('V') {
                return Ok(VbgRole::Auxiliary);
            }
        }
    }

    // rule 2: be-chain in front makes it the main verb
    let mut back = index;
    while back > 0 && tagged[back - 1].pos == "RB" {
        back -= 1;
    }
    if back > 0 {
        let prev = &tagged[back - 1];
        if prev.lemma == "be" && prev.pos.starts_with('V') {
            return Ok(VbgRole::RootVerb);
        }
    }

    if index > 0 {
        let prev = &tagged[index - 1];
        // rule 3
        if prev.pos == "," || CLAUSAL_INTRODUCERS.contains(&prev.word.to_lowercase().as_str()) {
            return Ok(VbgRole::AdverbialModifier);
        }
        // rule 4
        if let Some(next) = tagged.get(index + 1) {
            if matches!(next.pos.as_str(), "NN" | "NNS") {
                if prev.pos == "DT" {
                    return Ok(VbgRole::Compound);
                }
                if prev.pos == "PRP$" {
                    return Ok(VbgRole::ClausalModifierOfNoun);
                }
            }
        }
    }

    Ok(VbgRole::Nominal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(word: &str, pos: &str, lemma: &str) -> TaggedToken {
        TaggedToken::new(word, pos, lemma)
    }

    #[test]
    fn be_chain_makes_root_verb() {
        let tagged = vec![
            t("the", "DT", "the"),
            t("service", "NN", "service"),
            t("is", "VBZ", "be"),
            t("running", "VBG", "run"),
        ];
        assert_eq!(classify_vbg_role(&tagged, 3).unwrap(), VbgRole::RootVerb);
    }

    #[test]
    fn sentence_initial_gerund_is_nominal() {
        let tagged = vec![
            t("Powering", "VBG", "power"),
            t("down", "RP", "down"),
            t("the", "DT", "the"),
            t("cab", "NN", "cab"),
            t("radio", "NN", "radio"),
            t("shall", "MD", "shall"),
            t("cause", "VB", "cause"),
        ];
        assert_eq!(classify_vbg_role(&tagged, 0).unwrap(), VbgRole::Nominal);
    }

    #[test]
    fn determiner_vbg_noun_is_a_compound() {
        // oracle: a reference dependency parse marks "running" an amod/compound
        let tagged = vec![
            t("the", "DT", "the"),
            t("running", "VBG", "run"),
            t("water", "NN", "water"),
            t("stopped", "VBD", "stop"),
        ];
        let role = classify_vbg_role(&tagged, 1).unwrap();
        assert!(!role.is_nominal());
        assert_eq!(role, VbgRole::Compound);
    }

    #[test]
    fn by_introduces_adverbial_use() {
        let tagged = vec![
            t("by", "IN", "by"),
            t("editing", "VBG", "edit"),
            t("the", "DT", "the"),
            t("file", "NN", "file"),
        ];
        assert_eq!(
            classify_vbg_role(&tagged, 1).unwrap(),
            VbgRole::AdverbialModifier
        );
    }

    #[test]
    fn being_before_participle_is_auxiliary() {
        let tagged = vec![
            t("is", "VBZ", "be"),
            t("being", "VBG", "be"),
            t("tested", "VBN", "test"),
        ];
        assert_eq!(classify_vbg_role(&tagged, 1).unwrap(), VbgRole::Auxiliary);
    }

    #[test]
    fn adverb_between_be_and_vbg_is_skipped() {
        let tagged = vec![
            t("is", "VBZ", "be"),
            t("quickly", "RB", "quickly"),
            t("running", "VBG", "run"),
        ];
        assert_eq!(classify_vbg_role(&tagged, 2).unwrap(), VbgRole::RootVerb);
    }

    #[test]
    fn non_vbg_index_is_rejected() {
        let tagged = vec![t("gate", "NN", "gate")];
        assert!(matches!(
            classify_vbg_role(&tagged, 0),
            Err(AnnotateError::NotVbg { .. })
        ));
        assert!(matches!(
            classify_vbg_role(&tagged, 5),
            Err(AnnotateError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn every_vbg_gets_exactly_one_role() {
        let tagged = vec![
            t("logging", "VBG", "log"),
            t("should", "MD", "shall"),
            t("be", "VB", "be"),
            t("enabled", "VBN", "enable"),
            t("by", "IN", "by"),
            t("editing", "VBG", "edit"),
            t("the", "DT", "the"),
            t("file", "NN", "file"),
        ];
        for (i, token) in tagged.iter().enumerate() {
            if token.pos == "VBG" {
                classify_vbg_role(&tagged, i).unwrap();
            }
        }
        assert_eq!(classify_vbg_role(&tagged, 0).unwrap(), VbgRole::Nominal);
        assert_eq!(
            classify_vbg_role(&tagged, 5).unwrap(),
            VbgRole::AdverbialModifier
        );
    }
}

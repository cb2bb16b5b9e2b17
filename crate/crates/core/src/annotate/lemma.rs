//! Suffix-stripping lemmatizer with an irregular-form table.
//!
//! Precision matters where the downstream rules depend on it: every copula
//! form must lemmatize to "be" (the passive pattern matches on the literal
//! lemma), plural nouns must reach their singular for suffix and hypernym
//! checks. The rest is best effort.

use std::collections::HashMap;
use std::sync::LazyLock;

static IRREGULAR_VERBS: LazyLock<HashMap<&'static str, &'static str>> = LazyLock::new(|| {
    let pairs: &[(&str, &str)] = &[
        ("am", "be"),
        ("is", "be"),
        ("are", "be"),
        ("was", "be"),
        ("were", "be"),
        ("been", "be"),
        ("being", "be"),
        ("be", "be"),
        ("'s", "be"),
        ("'re", "be"),
        ("'m", "be"),
        ("has", "have"),
        ("had", "have"),
        ("have", "have"),
        ("having", "have"),
        ("'ve", "have"),
        ("does", "do"),
        ("did", "do"),
        ("done", "do"),
        ("went", "go"),
        ("gone", "go"),
        ("got", "get"),
        ("gotten", "get"),
        ("made", "make"),
        ("said", "say"),
        ("saw", "see"),
        ("seen", "see"),
        ("took", "take"),
        ("taken", "take"),
        ("came", "come"),
        ("gave", "give"),
        ("given", "give"),
        ("found", "find"),
        ("ran", "run"),
        ("wrote", "write"),
        ("written", "write"),
        ("broke", "break"),
        ("broken", "break"),
        ("brought", "bring"),
        ("built", "build"),
        ("bought", "buy"),
        ("caught", "catch"),
        ("chose", "choose"),
        ("chosen", "choose"),
        ("held", "hold"),
        ("kept", "keep"),
        ("knew", "know"),
        ("known", "know"),
        ("led", "lead"),
        ("left", "leave"),
        ("lost", "lose"),
        ("meant", "mean"),
        ("met", "meet"),
        ("paid", "pay"),
        ("sent", "send"),
        ("showed", "show"),
        ("shown", "show"),
        ("spoke", "speak"),
        ("spoken", "speak"),
        ("stood", "stand"),
        ("thought", "think"),
        ("told", "tell"),
        ("threw", "throw"),
        ("thrown", "throw"),
        ("understood", "understand"),
        // common e-final verbs the strip rules cannot recover
        ("fired", "fire"),
        ("firing", "fire"),
        ("enabled", "enable"),
        ("enabling", "enable"),
        ("disabled", "disable"),
        ("disabling", "disable"),
        ("included", "include"),
        ("including", "include"),
        ("excluded", "exclude"),
        ("excluding", "exclude"),
        ("required", "require"),
        ("provided", "provide"),
        ("resolved", "resolve"),
        ("received", "receive"),
        ("described", "describe"),
        ("named", "name"),
        ("noted", "note"),
    ];
    pairs.iter().copied().collect()
});

static IRREGULAR_NOUNS: LazyLock<HashMap<&'static str, &'static str>> = LazyLock::new(|| {
    let pairs: &[(&str, &str)] = &[
        ("children", "child"),
        ("people", "person"),
        ("men", "man"),
        ("women", "woman"),
        ("indices", "index"),
        ("statuses", "status"),
        ("criteria", "criterion"),
        ("data", "data"),
    ];
    pairs.iter().copied().collect()
});

/// Lowercase base form of a word given its Penn tag. Never empty.
pub fn lemma_of(word: &str, pos: &str) -> String {
    let lower = word.to_lowercase();
    if lower.is_empty() {
        return word.to_string();
    }

    let lemma = if pos.starts_with('V') || pos == "MD" {
        verb_lemma(&lower)
    } else if pos == "NNS" || pos == "NNPS" {
        noun_lemma(&lower)
    } else {
        lower.clone()
    };

    if lemma.is_empty() {
        lower
    } else {
        lemma
    }
}

fn verb_lemma(lower: &str) -> String {
    if let Some(base) = IRREGULAR_VERBS.get(lower) {
        return (*base).to_string();
    }
    if let Some(stem) = lower.strip_suffix("ies").filter(|s| s.len() >= 2) {
        return format!("{stem}y");
    }
    if let Some(stem) = lower.strip_suffix("ied").filter(|s| s.len() >= 2) {
        return format!("{stem}y");
    }
    for suffix in ["ing", "ed"] {
        if let Some(stem) = lower.strip_suffix(suffix) {
            if stem.len() < 2 {
                continue;
            }
            return restore_stem(stem);
        }
    }
    if let Some(stem) = lower.strip_suffix("es").filter(|s| needs_es(s)) {
        return stem.to_string();
    }
    if let Some(stem) = lower
        .strip_suffix('s')
        .filter(|s| s.len() >= 2 && !s.ends_with('s') && !s.ends_with('u'))
    {
        return stem.to_string();
    }
    lower.to_string()
}

/// After stripping -ing/-ed: undouble a doubled consonant (running -> run)
/// or restore a dropped final e (managing -> manage).
fn restore_stem(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 3 && chars[n - 1] == chars[n - 2] && "bdgmnprt".contains(chars[n - 1]) {
        return chars[..n - 1].iter().collect();
    }
    let last = chars[n - 1];
    let penult = chars[n - 2];
    if penult == last {
        // remaining doubles (ss, ll, zz, ff) are part of the base: pass, fall
        return stem.to_string();
    }
    if "cgsvz".contains(last) || (matches!(penult, 'a' | 'e') && last == 't') {
        let mut s: String = stem.to_string();
        s.push('e');
        return s;
    }
    stem.to_string()
}

fn noun_lemma(lower: &str) -> String {
    if let Some(base) = IRREGULAR_NOUNS.get(lower) {
        return (*base).to_string();
    }
    if let Some(stem) = lower.strip_suffix("ies").filter(|s| s.len() >= 2) {
        return format!("{stem}y");
    }
    if let Some(stem) = lower.strip_suffix("es").filter(|s| needs_es(s)) {
        return stem.to_string();
    }
    if let Some(stem) = lower
        .strip_suffix('s')
        .filter(|s| s.len() >= 2 && !s.ends_with('s') && !s.ends_with('u'))
    {
        return stem.to_string();
    }
    lower.to_string()
}

/// Stems that take -es rather than -s: class(es), box(es), match(es),
/// bush(es). A lone trailing `s` (cau·s) means the e belonged to the stem.
fn needs_es(stem: &str) -> bool {
    stem.ends_with("ss")
        || stem.ends_with('x')
        || stem.ends_with('z')
        || stem.ends_with("ch")
        || stem.ends_with("sh")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copula_forms_all_reach_be() {
        for form in ["was", "is", "are", "been", "being", "am", "were", "'s", "be"] {
            assert_eq!(lemma_of(form, "VBD"), "be", "form: {form}");
        }
    }

    #[test]
    fn regular_past_participles() {
        assert_eq!(lemma_of("opened", "VBN"), "open");
        assert_eq!(lemma_of("deployed", "VBN"), "deploy");
        assert_eq!(lemma_of("managed", "VBN"), "manage");
        assert_eq!(lemma_of("stopped", "VBD"), "stop");
        assert_eq!(lemma_of("identified", "VBN"), "identify");
        assert_eq!(lemma_of("created", "VBN"), "create");
        assert_eq!(lemma_of("fixed", "VBN"), "fix");
        assert_eq!(lemma_of("tested", "VBN"), "test");
        assert_eq!(lemma_of("passed", "VBN"), "pass");
    }

    #[test]
    fn third_person_forms() {
        assert_eq!(lemma_of("causes", "VBZ"), "cause");
        assert_eq!(lemma_of("returns", "VBZ"), "return");
        assert_eq!(lemma_of("matches", "VBZ"), "match");
    }

    #[test]
    fn gerunds() {
        assert_eq!(lemma_of("Powering", "VBG"), "power");
        assert_eq!(lemma_of("running", "VBG"), "run");
        assert_eq!(lemma_of("editing", "VBG"), "edit");
        assert_eq!(lemma_of("logging", "VBG"), "log");
        assert_eq!(lemma_of("using", "VBG"), "use");
    }

    #[test]
    fn plural_nouns() {
        assert_eq!(lemma_of("deployments", "NNS"), "deployment");
        assert_eq!(lemma_of("Motions", "NNS"), "motion");
        assert_eq!(lemma_of("issues", "NNS"), "issue");
        assert_eq!(lemma_of("classes", "NNS"), "class");
        assert_eq!(lemma_of("dependencies", "NNS"), "dependency");
        assert_eq!(lemma_of("statuses", "NNS"), "status");
    }

    #[test]
    fn non_inflected_words_just_lowercase() {
        assert_eq!(lemma_of("Disconnection", "NN"), "disconnection");
        assert_eq!(lemma_of("the", "DT"), "the");
        assert_eq!(lemma_of(".", "."), ".");
    }

    #[test]
    fn lemma_is_never_empty() {
        for (word, pos) in [("s", "VBZ"), ("ed", "VBD"), ("a", "NN"), ("es", "NNS")] {
            assert!(!lemma_of(word, pos).is_empty(), "{word}/{pos}");
        }
    }
}

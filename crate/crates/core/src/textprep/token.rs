//! Deterministic whitespace/punctuation tokenizer.

/// A token with character offsets into the text it was produced from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

/// Split text into word and punctuation tokens. Case is preserved and each
/// punctuation mark is its own token.
///
/// A word is a run of alphanumerics/underscores; `.`, `-`, `/` and `'`
/// stay inside a word when flanked by alphanumerics on both sides (so
/// "v2.1", "user-specific" and "and/or" hold together), except that an
/// apostrophe starts a new clitic token ("there's" -> "there", "'s").
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let start = i;
            let mut j = i + 1;
            while j < chars.len() {
                let cj = chars[j];
                if is_word_char(cj) {
                    j += 1;
                } else if matches!(cj, '.' | '-' | '/')
                    && j + 1 < chars.len()
                    && is_word_char(chars[j + 1])
                {
                    j += 2;
                } else {
                    break;
                }
            }
            tokens.push(Token {
                text: chars[start..j].iter().collect(),
                start,
                end: j,
            });
            i = j;
        } else if c == '\'' && i + 1 < chars.len() && is_word_char(chars[i + 1]) {
            // clitic: "'s", "'t", "'re", ...
            let start = i;
            let mut j = i + 1;
            while j < chars.len() && is_word_char(chars[j]) {
                j += 1;
            }
            tokens.push(Token {
                text: chars[start..j].iter().collect(),
                start,
                end: j,
            });
            i = j;
        } else {
            tokens.push(Token {
                text: c.to_string(),
                start: i,
                end: i + 1,
            });
            i += 1;
        }
    }
    tokens
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

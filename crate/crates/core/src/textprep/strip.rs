//! Markup removal for Jira wiki syntax plus Markdown fences and bare URLs.

use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

/// What a removed region originally was.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    CodeBlock,
    NoformatBlock,
    Url,
    ImageRef,
    HeaderMarkup,
    TableMarkup,
}

/// A span of the ORIGINAL text that was removed. Character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedRegion {
    pub kind: RegionKind,
    pub start: usize,
    pub end: usize,
}

/// Prose with its markup excised.
///
/// `removed_regions` are non-overlapping spans of the original text, in
/// ascending order. `text` is the original minus those spans, character for
/// character, so offsets into `text` can be mapped back via
/// [`CleanText::to_original`].
#[derive(Debug, Clone)]
pub struct CleanText {
    pub text: String,
    pub removed_regions: Vec<RemovedRegion>,
    /// (original_start, original_end) of each kept segment, in order.
    kept: Vec<(usize, usize)>,
}

impl CleanText {
    /// Map a character offset in the cleaned text back to the original text.
    /// Offsets at the very end map one past the last kept character.
    pub fn to_original(&self, clean_offset: usize) -> usize {
        let mut consumed = 0;
        for &(start, end) in &self.kept {
            let len = end - start;
            if clean_offset < consumed + len {
                return start + (clean_offset - consumed);
            }
            consumed += len;
        }
        self.kept.last().map_or(clean_offset, |&(_, end)| end)
    }
}

static CODE_BLOCK: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?s)\{code(?::[^}]*)?\}.*?\{code\}").unwrap());
static FENCE_BLOCK: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?s)```.*?```").unwrap());
static NOFORMAT_BLOCK: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?s)\{noformat\}.*?\{noformat\}").unwrap());
static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"\bhttps?://[^\s<>\[\]{}|"]+"#).unwrap());
static IMAGE_REF: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"![^\s!|]+\.[A-Za-z0-9]+(?:\|[^!\r\n]*)?!").unwrap());
static HEADER_SIGIL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?m)^h[1-6]\.[ \t]?").unwrap());

/// Remove markup from raw issue text, recording every removal.
///
/// Fenced code and noformat blocks disappear whole; for headers and tables
/// only the sigils go, the cell/heading prose stays. Malformed markup (an
/// unpaired `{code}`, say) is left alone as prose.
pub fn strip_markup(raw: &str) -> CleanText {
    // Candidate byte spans. Blocks are collected first so that markup inside
    // them is not recorded twice.
    let mut regions: Vec<(usize, usize, RegionKind)> = Vec::new();

    for m in CODE_BLOCK.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::CodeBlock);
    }
    for m in NOFORMAT_BLOCK.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::NoformatBlock);
    }
    for m in FENCE_BLOCK.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::CodeBlock);
    }
    for m in URL.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::Url);
    }
    for m in IMAGE_REF.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::ImageRef);
    }
    for m in HEADER_SIGIL.find_iter(raw) {
        push_if_free(&mut regions, m.start(), m.end(), RegionKind::HeaderMarkup);
    }
    for (start, end) in table_sigils(raw) {
        push_if_free(&mut regions, start, end, RegionKind::TableMarkup);
    }

    regions.sort_by_key(|&(start, end, _)| (start, end));

    // Convert byte spans to char spans and assemble the kept text.
    let byte_to_char: std::collections::HashMap<usize, usize> = raw
        .char_indices()
        .enumerate()
        .map(|(ci, (bi, _))| (bi, ci))
        .collect();
    let total_chars = raw.chars().count();
    let char_of = |b: usize| {
        if b == raw.len() {
            total_chars
        } else {
            byte_to_char[&b]
        }
    };

    let mut removed = Vec::with_capacity(regions.len());
    let mut kept = Vec::new();
    let mut text = String::with_capacity(raw.len());
    let mut cursor = 0usize; // byte cursor
    for &(start, end, kind) in &regions {
        if start > cursor {
            kept.push((char_of(cursor), char_of(start)));
            text.push_str(&raw[cursor..start]);
        }
        removed.push(RemovedRegion {
            kind,
            start: char_of(start),
            end: char_of(end),
        });
        cursor = end;
    }
    if cursor < raw.len() {
        kept.push((char_of(cursor), total_chars));
        text.push_str(&raw[cursor..]);
    }

    CleanText {
        text,
        removed_regions: removed,
        kept,
    }
}

fn push_if_free(regions: &mut Vec<(usize, usize, RegionKind)>, start: usize, end: usize, kind: RegionKind) {
    if regions
        .iter()
        .all(|&(s, e, _)| end <= s || start >= e)
    {
        regions.push((start, end, kind));
    }
}

/// Byte spans of `||` / `|` sigils on table lines (lines that start with a pipe).
fn table_sigils(raw: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in raw.split_inclusive('\n') {
        let trimmed = line.trim_start();
        if trimmed.starts_with('|') {
            let bytes = line.as_bytes();
            let mut i = 0;
            while i < bytes.len() {
                if bytes[i] == b'|' {
                    let mut j = i + 1;
                    if j < bytes.len() && bytes[j] == b'|' {
                        j += 1;
                    }
                    out.push((line_start + i, line_start + j));
                    i = j;
                } else {
                    i += 1;
                }
            }
        }
        line_start += line.len();
    }
    out
}

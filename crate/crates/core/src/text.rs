//! Deterministic target-language tokenization and source-language idiom
//! matching.
//!
//! The tokenizer defines what "the hypothesis contains a blacklist word"
//! means, so its rules are fixed:
//!
//! * lowercase the sentence, split on whitespace;
//! * split each piece at apostrophes and hyphens, discarding the separator
//!   (`can't` → `can`, `t`; `well-thought-out` → `well`, `thought`, `out`);
//! * strip leading/trailing non-alphanumeric characters from every fragment
//!   (Unicode-aware, so curly quotes and CJK punctuation are trimmed);
//! * drop empty fragments.
//!
//! Matching is exact per token: `wind` never matches inside `window`. No
//! stemming or plural folding is applied; blacklists enumerate the variants
//! they care about (`wood wooden`, `mouse mice rat`).
//!
//! Idiom matching on the source side is raw contiguous-codepoint substring
//! search with no segmentation and no script normalization.

use crate::model::IdiomList;

/// Apostrophe and hyphen/dash characters at which pieces are split.
const SPLIT_CHARS: &[char] = &['\'', '\u{2019}', '-', '\u{2010}', '\u{2013}', '\u{2014}'];

/// Tokenize target-language text into lowercase word tokens.
///
/// Empty input yields an empty vector. Every returned token is non-empty,
/// contains no whitespace, and equals its own lowercase form.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let lowered = sentence.to_lowercase();
    let mut tokens = Vec::new();
    for piece in lowered.split_whitespace() {
        for fragment in piece.split(SPLIT_CHARS) {
            let trimmed = fragment.trim_matches(|c: char| !c.is_alphanumeric());
            if !trimmed.is_empty() {
                tokens.push(trimmed.to_string());
            }
        }
    }
    tokens
}

/// True iff `idiom` occurs as a contiguous codepoint subsequence of the raw
/// sentence. Exact codepoint equality; no normalization of any kind.
pub fn contains_idiom(sentence: &str, idiom: &str) -> bool {
    sentence.contains(idiom)
}

/// All idioms of `idioms` occurring in `sentence`, in list order.
/// Overlapping matches are all reported.
pub fn find_idioms<'a>(sentence: &str, idioms: &'a IdiomList) -> Vec<&'a str> {
    idioms
        .entries()
        .iter()
        .map(|e| e.idiom())
        .filter(|idiom| contains_idiom(sentence, idiom))
        .collect()
}

//! Label normalization, tokenization, deduplication and the entry/token/word
//! accounting.
//!
//! Tokens are every significant unit: a word, a digit group, or a punctuation
//! mark. Words are the tokens left after excluding digits, punctuation and
//! stray symbols.

use std::collections::BTreeSet;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::diag::Diagnostic;
use crate::entry::{ConceptEntry, Token, TokenKind};
use crate::error::{Error, Result};
use crate::numfmt;

/// Default symbols stripped before tokenization.
pub const DEFAULT_STRIP_SET: &str = "%*";

/// Remove the characters in `strip_set`, collapse whitespace runs to single
/// spaces and trim. Errors when nothing is left: such entries are excluded
/// upstream with a diagnostic.
pub fn preprocess(raw_label: &str, strip_set: &BTreeSet<char>) -> Result<String> {
    let stripped: String = raw_label.chars().filter(|c| !strip_set.contains(c)).collect();
    let normalized = stripped.split_whitespace().collect::<Vec<_>>().join(" ");
    if normalized.is_empty() {
        return Err(Error::EmptyAfterPreprocess);
    }
    Ok(normalized)
}

pub fn strip_set_from(spec: &str) -> BTreeSet<char> {
    spec.chars().filter(|c| !c.is_whitespace()).collect()
}

// Characters that always split off as their own punctuation token. The
// hyphen is absent: hyphenated words stay one token and a hyphen only counts
// as punctuation when it stands alone between spaces.
fn is_split_punct(c: char) -> bool {
    matches!(
        c,
        ',' | '.' | ';' | ':' | '·' | '!' | '?' | '(' | ')' | '[' | ']'
            | '«' | '»' | '"' | '\'' | '‘' | '’' | '“' | '”' | '…'
    )
}

fn is_digit_group(s: &str) -> bool {
    let mut chars = s.chars().peekable();
    let mut saw_digit = false;
    let mut prev_was_digit = false;
    while let Some(c) = chars.next() {
        if c.is_ascii_digit() {
            saw_digit = true;
            prev_was_digit = true;
        } else if (c == '.' || c == ',') && prev_was_digit && chars.peek().map_or(false, |n| n.is_ascii_digit()) {
            prev_was_digit = false;
        } else {
            return false;
        }
    }
    saw_digit
}

/// Token kind for a surface that is already a single token (as in
/// pre-tagged input).
pub fn classify_surface(s: &str) -> TokenKind {
    classify_run(s)
}

fn classify_run(s: &str) -> TokenKind {
    if is_digit_group(s) {
        TokenKind::Digit
    } else if s.chars().count() == 1 {
        let c = s.chars().next().unwrap();
        if is_split_punct(c) || c == '-' {
            TokenKind::Punct
        } else if !c.is_alphanumeric() {
            TokenKind::Symbol
        } else {
            TokenKind::Word
        }
    } else {
        TokenKind::Word
    }
}

/// Split a label into tokens. Inter-token spacing is recorded on each token,
/// so concatenating `gap_before + surface` over the result reproduces the
/// label up to trailing whitespace.
pub fn tokenize(label: &str) -> Vec<Token> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut gap = String::new();
    let mut run = String::new();
    let chars: Vec<char> = label.chars().collect();

    let mut push = |surface: &str, gap: &mut String| {
        if surface.is_empty() {
            return;
        }
        let mut t = Token::new(surface, classify_run(surface), 0);
        t.gap_before = std::mem::take(gap);
        // index fixed up below
        tokens.push(t);
    };

    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            push(&run, &mut gap);
            run.clear();
            gap.push(c);
        } else if is_split_punct(c) {
            // decimal separators stay inside a digit group
            let prev_digit = run.chars().last().map_or(false, |p| p.is_ascii_digit());
            let next_digit = chars.get(i + 1).map_or(false, |n| n.is_ascii_digit());
            if (c == '.' || c == ',') && prev_digit && next_digit && is_digit_group(&run) {
                run.push(c);
            } else {
                push(&run, &mut gap);
                run.clear();
                push(&c.to_string(), &mut gap);
            }
        } else {
            run.push(c);
        }
        i += 1;
    }
    push(&run, &mut gap);

    for (i, t) in tokens.iter_mut().enumerate() {
        t.index = i;
    }
    tokens
}

/// Inverse of [`tokenize`] up to trailing whitespace.
pub fn reconstruct(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.gap_before);
        out.push_str(&t.surface);
    }
    out
}

fn dedup_key(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Keep the first occurrence of each normalized label (whitespace-collapsed,
/// case-preserving exact match); report how many entries were removed.
pub fn deduplicate(entries: Vec<ConceptEntry>) -> (Vec<ConceptEntry>, usize) {
    let mut seen: HashSet<String> = HashSet::with_capacity(entries.len());
    let before = entries.len();
    let kept: Vec<ConceptEntry> = entries
        .into_iter()
        .filter(|e| seen.insert(dedup_key(&e.raw_label)))
        .collect();
    let removed = before - kept.len();
    (kept, removed)
}

/// Entry/token/word totals plus the per-entry averages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitCounts {
    pub entries: u64,
    pub tokens: u64,
    pub words: u64,
    /// None for an empty corpus (absent, not zero).
    pub words_per_entry: Option<f64>,
    pub tokens_per_entry: Option<f64>,
}

impl UnitCounts {
    pub fn from_totals(entries: u64, tokens: u64, words: u64) -> Self {
        let ratio = |num: u64| {
            if entries == 0 {
                None
            } else {
                Some(num as f64 / entries as f64)
            }
        };
        UnitCounts {
            entries,
            tokens,
            words,
            words_per_entry: ratio(words),
            tokens_per_entry: ratio(tokens),
        }
    }

    /// Display strings, two decimals half-up.
    pub fn words_per_entry_2dp(&self) -> Option<String> {
        numfmt::ratio_2dp(self.words, self.entries)
    }

    pub fn tokens_per_entry_2dp(&self) -> Option<String> {
        numfmt::ratio_2dp(self.tokens, self.entries)
    }
}

/// Count entries, tokens and words over a tokenized corpus.
pub fn unit_counts(entries: &[ConceptEntry], diags: &mut Vec<Diagnostic>) -> UnitCounts {
    let tokens: u64 = entries.iter().map(|e| e.tokens.len() as u64).sum();
    let words: u64 = entries.iter().map(|e| e.word_count() as u64).sum();
    if entries.is_empty() {
        diags.push(Diagnostic::warning(
            "empty-corpus",
            "no entries to count; per-entry ratios are undefined",
        ));
    }
    UnitCounts::from_totals(entries.len() as u64, tokens, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(tokens: &[Token]) -> Vec<TokenKind> {
        tokens.iter().map(|t| t.kind).collect()
    }

    #[test]
    fn preprocess_strips_and_normalizes() {
        let strip = strip_set_from("%*");
        assert_eq!(preprocess("foo %bar*", &strip).unwrap(), "foo bar");
        assert_eq!(preprocess("  a   b ", &BTreeSet::new()).unwrap(), "a b");
        assert!(matches!(
            preprocess("%%", &strip_set_from("%")),
            Err(Error::EmptyAfterPreprocess)
        ));
    }

    #[test]
    fn enumeration_label_splits_into_words_and_commas() {
        let toks = tokenize("Ceiling, walls, doors, windows");
        assert_eq!(toks.len(), 7);
        let words = toks.iter().filter(|t| t.kind == TokenKind::Word).count();
        let commas = toks
            .iter()
            .filter(|t| t.kind == TokenKind::Punct && t.surface == ",")
            .count();
        assert_eq!((words, commas), (4, 3));
    }

    #[test]
    fn decimal_notation_stays_one_digit_token() {
        let toks = tokenize("070.1");
        assert_eq!(kinds(&toks), vec![TokenKind::Digit]);
        assert_eq!(toks[0].surface, "070.1");
    }

    #[test]
    fn single_word() {
        let toks = tokenize("x");
        assert_eq!(kinds(&toks), vec![TokenKind::Word]);
    }

    #[test]
    fn parens_and_middle_dot_split() {
        let toks = tokenize("Ερμής (θεότητα)· τέλος");
        let surfaces: Vec<&str> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(surfaces, vec!["Ερμής", "(", "θεότητα", ")", "·", "τέλος"]);
        assert_eq!(toks[4].kind, TokenKind::Punct);
    }

    #[test]
    fn hyphen_splits_only_between_spaces() {
        assert_eq!(tokenize("well-being").len(), 1);
        let toks = tokenize("a - b");
        assert_eq!(kinds(&toks), vec![TokenKind::Word, TokenKind::Punct, TokenKind::Word]);
    }

    #[test]
    fn lone_symbol_token() {
        let toks = tokenize("50 % x");
        assert_eq!(
            kinds(&toks),
            vec![TokenKind::Digit, TokenKind::Symbol, TokenKind::Word]
        );
    }

    #[test]
    fn reconstruction_keeps_spacing() {
        for label in ["Oil and natural gas", "a,b (c)", "  leading", "070.1 · x"] {
            assert_eq!(reconstruct(&tokenize(label)), label);
        }
        // trailing whitespace is the one thing not preserved
        assert_eq!(reconstruct(&tokenize("a b  ")), "a b");
    }

    #[test]
    fn deduplicate_keeps_first_and_counts_removed() {
        let mk = |id: &str, label: &str| ConceptEntry::new(id, label, "en", "t");
        let entries = vec![
            mk("1", "a b"),
            mk("2", "a  b"),
            mk("3", "c"),
            mk("4", "a b"),
            mk("5", "C"),
        ];
        let (kept, removed) = deduplicate(entries);
        assert_eq!(removed, 2);
        let ids: Vec<&str> = kept.iter().map(|e| e.entry_id.as_str()).collect();
        assert_eq!(ids, vec!["1", "3", "5"]); // case-sensitive: "C" stays
    }

    #[test]
    fn deduplicate_is_idempotent() {
        let mk = |id: &str, label: &str| ConceptEntry::new(id, label, "en", "t");
        let entries: Vec<ConceptEntry> = (0..10)
            .map(|i| mk(&i.to_string(), if i % 3 == 0 { "dup" } else { "u" }))
            .collect();
        let (once, _) = deduplicate(entries);
        let (twice, removed_again) = deduplicate(once.clone());
        assert_eq!(once, twice);
        assert_eq!(removed_again, 0);
    }

    #[test]
    fn desk_scale_dedup_ratio() {
        // 10 raw entries reduced to 7 unique
        let labels = ["a", "b", "a", "c", "d", "b", "e", "f", "a", "g"];
        let entries: Vec<ConceptEntry> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| ConceptEntry::new(format!("t:{i}"), *l, "en", "t"))
            .collect();
        let (kept, removed) = deduplicate(entries);
        assert_eq!((kept.len(), removed), (7, 3));
    }

    #[test]
    fn unit_counts_ratios() {
        let mut e1 = ConceptEntry::new("1", "one", "en", "t");
        e1.tokens = tokenize("one");
        let mut diags = Vec::new();
        let counts = unit_counts(&[e1], &mut diags);
        assert_eq!((counts.entries, counts.tokens, counts.words), (1, 1, 1));
        assert_eq!(counts.words_per_entry_2dp().as_deref(), Some("1.00"));
        assert_eq!(counts.tokens_per_entry_2dp().as_deref(), Some("1.00"));
    }

    #[test]
    fn unit_counts_empty_corpus_has_absent_ratios() {
        let mut diags = Vec::new();
        let counts = unit_counts(&[], &mut diags);
        assert_eq!(counts.entries, 0);
        assert_eq!(counts.words_per_entry, None);
        assert_eq!(counts.tokens_per_entry, None);
        assert!(diags.iter().any(|d| d.code == "empty-corpus"));
    }

    #[test]
    fn words_never_exceed_tokens() {
        for label in ["a b c", "a, b", "070.1", "x (y)", "% %"] {
            let toks = tokenize(label);
            let words = toks.iter().filter(|t| t.kind == TokenKind::Word).count();
            assert!(words <= toks.len());
        }
    }
}

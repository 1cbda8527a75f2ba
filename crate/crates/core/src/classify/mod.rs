//! Syntactic-pattern derivation and the atomicity verdict: each tagged entry
//! is Indivisible (one of the pattern rules), Divisible (enumeration and/or
//! composite markers), or Undetermined. Markers always win: an entry with
//! any divisibility marker is never Indivisible.

mod rules;

pub use rules::{IndivisibilityRule, PatternAtom, PatternTemplate, Predicate, RuleSet};

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::entry::{ConceptEntry, Token};
use crate::error::{Error, Result};
use crate::morphotag::{coarse, CoarseLabel, PosCategory, PunctClass};

/// Coarse POS sequence of an entry, canonically rendered "N+Adj+N" with all
/// punctuation as "Punct".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntacticPattern {
    pub labels: Vec<CoarseLabel>,
}

impl SyntacticPattern {
    pub fn canonical(&self) -> String {
        self.labels
            .iter()
            .map(|l| l.name())
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisibilityType {
    Enumeration,
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkerKind {
    Conjunction,
    EtcExpression,
    CommaParataxis,
    Parenthesis,
    Adposition,
}

impl MarkerKind {
    /// Fixed mapping from marker kind to divisibility type.
    pub fn divisibility_type(self) -> DivisibilityType {
        match self {
            MarkerKind::Conjunction | MarkerKind::EtcExpression | MarkerKind::CommaParataxis => {
                DivisibilityType::Enumeration
            }
            MarkerKind::Parenthesis | MarkerKind::Adposition => DivisibilityType::Composite,
        }
    }
}

/// Evidence that an entry holds more than one concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityMarker {
    pub kind: MarkerKind,
    /// Token positions evidencing the marker.
    pub token_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Indivisible {
        rule_id: String,
    },
    Divisible {
        types: BTreeSet<DivisibilityType>,
        markers: Vec<DivisibilityMarker>,
    },
    Undetermined {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub pattern: SyntacticPattern,
}

impl Verdict {
    pub fn is_divisible(&self) -> bool {
        matches!(self.outcome, Outcome::Divisible { .. })
    }

    pub fn is_indivisible(&self) -> bool {
        matches!(self.outcome, Outcome::Indivisible { .. })
    }
}

/// Coarse label per token, in order. Errors on empty or not fully tagged
/// entries.
pub fn pattern_of(entry: &ConceptEntry) -> Result<SyntacticPattern> {
    if entry.tokens.is_empty() {
        return Err(Error::Unclassifiable {
            entry_id: entry.entry_id.clone(),
            reason: "no tokens".into(),
        });
    }
    let mut labels = Vec::with_capacity(entry.tokens.len());
    for token in &entry.tokens {
        let tag = token.tag.as_ref().ok_or_else(|| Error::Unclassifiable {
            entry_id: entry.entry_id.clone(),
            reason: format!("token {} ({:?}) is untagged", token.index, token.surface),
        })?;
        labels.push(coarse(tag));
    }
    Ok(SyntacticPattern { labels })
}

fn is_counted_conjunction(token: &Token, rules: &RuleSet) -> bool {
    let Some(tag) = &token.tag else { return false };
    tag.category == PosCategory::Conjunction
        && tag.subtype.as_deref() == Some("Coordinative")
        && rules
            .conjunction_lemmas
            .contains(&token.lemma_or_surface().to_lowercase())
}

fn is_etc_pronoun(token: &Token, rules: &RuleSet) -> bool {
    let Some(tag) = &token.tag else { return false };
    tag.category == PosCategory::Pronoun
        && tag.subtype.as_deref() == Some("Indefinite")
        && rules
            .etc_pronoun_lemmas
            .contains(&token.lemma_or_surface().to_lowercase())
}

fn punct_class_of(token: &Token) -> Option<PunctClass> {
    token.tag.as_ref().and_then(|t| coarse(t).punct_class())
}

/// Scan an entry for divisibility markers.
///
/// Etc-expressions are found first (a phrase from the etc list, or the
/// [conjunction + indefinite "other"] bigram) so the conjunctions inside
/// them are not double-counted. A single comma only counts as parataxis
/// when the whole entry matches no inversion exception.
pub fn scan_markers(entry: &ConceptEntry, rules: &RuleSet) -> Vec<DivisibilityMarker> {
    let tokens = &entry.tokens;
    let mut markers = Vec::new();
    let mut in_etc: HashSet<usize> = HashSet::new();

    // etc phrases over lemmas/surfaces, leftmost and non-overlapping
    for start in 0..tokens.len() {
        if in_etc.contains(&start) {
            continue;
        }
        for phrase in &rules.etc_phrases {
            let end = start + phrase.len();
            if end > tokens.len() {
                continue;
            }
            let matched = tokens[start..end]
                .iter()
                .zip(phrase)
                .all(|(t, w)| t.lemma_or_surface().to_lowercase() == *w)
                && (start..end).all(|i| !in_etc.contains(&i));
            if matched {
                in_etc.extend(start..end);
                markers.push(DivisibilityMarker {
                    kind: MarkerKind::EtcExpression,
                    token_indices: (start..end).collect(),
                });
                break;
            }
        }
    }

    // [conjunction + indefinite pronoun "other"]
    for i in 0..tokens.len().saturating_sub(1) {
        if in_etc.contains(&i) || in_etc.contains(&(i + 1)) {
            continue;
        }
        if is_counted_conjunction(&tokens[i], rules) && is_etc_pronoun(&tokens[i + 1], rules) {
            in_etc.insert(i);
            in_etc.insert(i + 1);
            markers.push(DivisibilityMarker {
                kind: MarkerKind::EtcExpression,
                token_indices: vec![i, i + 1],
            });
        }
    }

    // remaining and/or conjunctions
    for (i, token) in tokens.iter().enumerate() {
        if !in_etc.contains(&i) && is_counted_conjunction(token, rules) {
            markers.push(DivisibilityMarker {
                kind: MarkerKind::Conjunction,
                token_indices: vec![i],
            });
        }
    }

    // commas: two or more are parataxis outright, one is parataxis unless
    // the entry is an inversion
    let commas: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| punct_class_of(t) == Some(PunctClass::Comma))
        .map(|(i, _)| i)
        .collect();
    let is_inversion = rules
        .inversion_exceptions
        .iter()
        .any(|template| template.matches(tokens));
    if commas.len() >= 2 || (commas.len() == 1 && !is_inversion) {
        markers.push(DivisibilityMarker {
            kind: MarkerKind::CommaParataxis,
            token_indices: commas,
        });
    }

    // balanced parentheses
    let mut open_stack: Vec<usize> = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        match punct_class_of(token) {
            Some(PunctClass::OpenParen) => open_stack.push(i),
            Some(PunctClass::CloseParen) => {
                if let Some(open) = open_stack.pop() {
                    markers.push(DivisibilityMarker {
                        kind: MarkerKind::Parenthesis,
                        token_indices: vec![open, i],
                    });
                }
            }
            _ => {}
        }
    }

    // adpositions
    for (i, token) in tokens.iter().enumerate() {
        if token.tag.as_ref().map(|t| t.category) == Some(PosCategory::Adposition) {
            markers.push(DivisibilityMarker {
                kind: MarkerKind::Adposition,
                token_indices: vec![i],
            });
        }
    }

    markers.sort_by_key(|m| (m.token_indices.first().copied().unwrap_or(0), m.kind));
    markers
}

/// First matching indivisibility rule, in rule-set order. Callers must have
/// established that the entry carries no divisibility markers.
pub fn match_indivisible<'r>(entry: &ConceptEntry, rules: &'r RuleSet) -> Option<&'r str> {
    for rule in &rules.rules {
        for (template, predicate) in &rule.alternatives {
            if template.matches(&entry.tokens) && predicate.holds(&entry.tokens) {
                return Some(&rule.id);
            }
        }
    }
    None
}

/// Classify a tagged entry. Markers are scanned first; only marker-free
/// entries can be Indivisible.
pub fn classify(entry: &ConceptEntry, rules: &RuleSet) -> Result<Verdict> {
    let pattern = pattern_of(entry)?;
    let markers = scan_markers(entry, rules);
    let outcome = if !markers.is_empty() {
        let types: BTreeSet<DivisibilityType> = markers
            .iter()
            .map(|m| m.kind.divisibility_type())
            .collect();
        Outcome::Divisible { types, markers }
    } else if let Some(rule_id) = match_indivisible(entry, rules) {
        Outcome::Indivisible {
            rule_id: rule_id.to_string(),
        }
    } else {
        Outcome::Undetermined {
            reason: "no rule matched".into(),
        }
    };
    Ok(Verdict { outcome, pattern })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entry::TokenKind;
    use crate::testutil::tagged_entry;

    #[test]
    fn figure_style_entry_has_noun_adj_noun_pattern() {
        let entry = tagged_entry(&[
            ("χάρτης", "NoCmMaSgNm"),
            ("εκπαιδευτικών", "AjBaNePlGe"),
            ("ιδρυμάτων", "NoCmNePlGe"),
        ]);
        let pattern = pattern_of(&entry).unwrap();
        assert_eq!(pattern.canonical(), "N+Adj+N");
    }

    #[test]
    fn single_digit_pattern() {
        let entry = tagged_entry(&[("070.1", "Di")]);
        assert_eq!(pattern_of(&entry).unwrap().canonical(), "Dig");
    }

    #[test]
    fn empty_entry_is_an_error() {
        let entry = ConceptEntry::new("t:1", "x", "el", "t");
        assert!(pattern_of(&entry).is_err());
    }

    #[test]
    fn untagged_token_is_an_error() {
        let mut entry = ConceptEntry::new("t:1", "x", "el", "t");
        entry.tokens.push(Token::new("x", TokenKind::Word, 0));
        assert!(matches!(
            pattern_of(&entry),
            Err(Error::Unclassifiable { .. })
        ));
    }

    #[test]
    fn conjunction_marker_fires_on_and() {
        // "Oil and natural gas"
        let entry = tagged_entry(&[
            ("oil", "NoCmNeSgNm"),
            ("and", "CjCo"),
            ("natural", "AjBaNeSgNm"),
            ("gas", "NoCmNeSgNm"),
        ]);
        let markers = scan_markers(&entry, &RuleSet::builtin());
        assert_eq!(markers.len(), 1);
        assert_eq!(markers[0].kind, MarkerKind::Conjunction);
        assert_eq!(markers[0].token_indices, vec![1]);
    }

    #[test]
    fn inversion_exception_suppresses_single_comma() {
        // "Literature, Portuguese"
        let entry = tagged_entry(&[
            ("Literature", "NoCmFeSgNm"),
            (",", "PuCm"),
            ("Portuguese", "AjBaFeSgNm"),
        ]);
        assert!(scan_markers(&entry, &RuleSet::builtin()).is_empty());
    }

    #[test]
    fn two_commas_are_parataxis() {
        // "Documentary media, educational media, news media"
        let entry = tagged_entry(&[
            ("μέσα", "NoCmNePlNm"),
            ("τεκμηρίωσης", "NoCmFeSgGe"),
            (",", "PuCm"),
            ("εκπαιδευτικά", "AjBaNePlNm"),
            ("μέσα", "NoCmNePlNm"),
            (",", "PuCm"),
            ("μέσα", "NoCmNePlNm"),
            ("ενημέρωσης", "NoCmFeSgGe"),
        ]);
        let markers = scan_markers(&entry, &RuleSet::builtin());
        assert_eq!(markers.len(), 1);
        assert_eq!(markers[0].kind, MarkerKind::CommaParataxis);
        assert_eq!(markers[0].token_indices, vec![2, 5]);
    }

    #[test]
    fn adposition_marker() {
        // "Sports for children"
        let entry = tagged_entry(&[
            ("Sports", "NoCmNePlNm"),
            ("for", "AsSp"),
            ("children", "NoCmNePlAc"),
        ]);
        let markers = scan_markers(&entry, &RuleSet::builtin());
        assert_eq!(markers.len(), 1);
        assert_eq!(markers[0].kind, MarkerKind::Adposition);
    }

    #[test]
    fn etc_bigram_counts_once_not_as_conjunction() {
        let entry = tagged_entry(&[
            ("έπιπλα", "NoCmNePlNm"),
            ("και", "CjCo"),
            ("άλλα", "PnIdNePlNm"),
        ]);
        let markers = scan_markers(&entry, &RuleSet::builtin());
        assert_eq!(markers.len(), 1);
        assert_eq!(markers[0].kind, MarkerKind::EtcExpression);
        assert_eq!(markers[0].token_indices, vec![1, 2]);
    }

    #[test]
    fn etc_abbreviation_marker() {
        let entry = tagged_entry(&[("βιβλία", "NoCmNePlNm"), ("κλπ", "AbOt")]);
        let markers = scan_markers(&entry, &RuleSet::builtin());
        assert_eq!(markers.len(), 1);
        assert_eq!(markers[0].kind, MarkerKind::EtcExpression);
    }

    #[test]
    fn figure_style_entry_matches_noun_adjective_noun_rule() {
        let entry = tagged_entry(&[
            ("χάρτης", "NoCmMaSgNm"),
            ("εκπαιδευτικών", "AjBaNePlGe"),
            ("ιδρυμάτων", "NoCmNePlGe"),
        ]);
        assert_eq!(match_indivisible(&entry, &RuleSet::builtin()), Some("R7"));
    }

    #[test]
    fn nominative_genitive_nouns_match_r3() {
        let entry = tagged_entry(&[("ασφάλεια", "NoCmFeSgNm"), ("ζωής", "NoCmFeSgGe")]);
        assert_eq!(match_indivisible(&entry, &RuleSet::builtin()), Some("R3"));
    }

    #[test]
    fn three_genitive_nouns_match_nothing() {
        let entry = tagged_entry(&[
            ("a", "NoCmFeSgNm"),
            ("b", "NoCmFeSgGe"),
            ("c", "NoCmFeSgGe"),
        ]);
        assert_eq!(match_indivisible(&entry, &RuleSet::builtin()), None);
    }

    #[test]
    fn classify_divisible_enumeration() {
        let entry = tagged_entry(&[
            ("oil", "NoCmNeSgNm"),
            ("and", "CjCo"),
            ("gas", "NoCmNeSgNm"),
        ]);
        let verdict = classify(&entry, &RuleSet::builtin()).unwrap();
        assert_eq!(verdict.pattern.canonical(), "N+Conj+N");
        match verdict.outcome {
            Outcome::Divisible { types, .. } => {
                assert_eq!(types.into_iter().collect::<Vec<_>>(), vec![
                    DivisibilityType::Enumeration
                ]);
            }
            other => panic!("expected divisible, got {other:?}"),
        }
    }

    #[test]
    fn classify_divisible_composite() {
        let entry = tagged_entry(&[
            ("sports", "NoCmNePlNm"),
            ("for", "AsSp"),
            ("children", "NoCmNePlAc"),
        ]);
        let verdict = classify(&entry, &RuleSet::builtin()).unwrap();
        assert_eq!(verdict.pattern.canonical(), "N+Adp+N");
        match verdict.outcome {
            Outcome::Divisible { types, .. } => {
                assert_eq!(types.into_iter().collect::<Vec<_>>(), vec![
                    DivisibilityType::Composite
                ]);
            }
            other => panic!("expected divisible, got {other:?}"),
        }
    }

    #[test]
    fn conjunction_and_parenthesis_union_to_both_types() {
        let entry = tagged_entry(&[
            ("ζωγραφική", "NoCmFeSgNm"),
            ("και", "CjCo"),
            ("γλυπτική", "NoCmFeSgNm"),
            ("(", "PuOp"),
            ("τέχνη", "NoCmFeSgNm"),
            (")", "PuCl"),
        ]);
        let verdict = classify(&entry, &RuleSet::builtin()).unwrap();
        match &verdict.outcome {
            Outcome::Divisible { types, markers } => {
                assert_eq!(types.len(), 2);
                assert_eq!(markers.len(), 2);
            }
            other => panic!("expected divisible, got {other:?}"),
        }
    }

    #[test]
    fn markers_always_beat_indivisibility_rules() {
        // Adj+N would be R2, but a trailing parenthesis pair makes it
        // divisible; check with a pattern that matches no rule either way
        let entry = tagged_entry(&[
            ("φυσικό", "AjBaNeSgNm"),
            ("αέριο", "NoCmNeSgNm"),
            ("(", "PuOp"),
            ("καύσιμο", "NoCmNeSgNm"),
            (")", "PuCl"),
        ]);
        let verdict = classify(&entry, &RuleSet::builtin()).unwrap();
        assert!(verdict.is_divisible());
    }

    #[test]
    fn undetermined_when_no_rule_or_marker_applies() {
        let entry = tagged_entry(&[
            ("a", "NoCmFeSgGe"),
            ("b", "NoCmFeSgNm"),
        ]);
        let verdict = classify(&entry, &RuleSet::builtin()).unwrap();
        assert!(matches!(verdict.outcome, Outcome::Undetermined { .. }));
    }
}

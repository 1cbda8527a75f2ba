//! Decomposition proposals for divisible entries: split at the divisibility
//! markers, re-classify each candidate constituent, and emit
//! provenance-carrying SKOS fragment proposals as N-Triples.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, MarkerKind, Outcome, RuleSet, Verdict};
use crate::entry::{ConceptEntry, TokenKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    High,
    Low,
}

/// One candidate atomic label within a divisible entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constituent {
    /// Token span, start inclusive, end exclusive.
    pub start: usize,
    pub end: usize,
    pub label: String,
    /// Whether the span re-classifies as Indivisible on its own.
    pub indivisible: bool,
}

/// A proposed decomposition: ordered, non-overlapping constituent spans with
/// a relation hint per adjacent pair. Hints are plain text (an adposition
/// lemma, "enumeration", or "qualifier"), never an invented predicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub entry_id: String,
    pub lang: String,
    pub source_label: String,
    pub constituents: Vec<Constituent>,
    /// hints[i] relates constituents[i] and constituents[i+1].
    pub hints: Vec<Option<String>>,
    pub confidence: Confidence,
    /// Token positions removed as separators (markers and residue between
    /// spans); together with the constituent spans they cover the entry.
    pub separator_indices: Vec<usize>,
}

fn constituent_text(entry: &ConceptEntry, start: usize, end: usize) -> String {
    let mut out = String::new();
    for (offset, token) in entry.tokens[start..end].iter().enumerate() {
        if offset > 0 {
            out.push_str(&token.gap_before);
        }
        out.push_str(&token.surface);
    }
    out
}

/// Split a Divisible entry at its markers. Returns None for non-divisible
/// verdicts or when fewer than two word-bearing spans survive.
pub fn split(entry: &ConceptEntry, verdict: &Verdict, rules: &RuleSet) -> Option<Decomposition> {
    let Outcome::Divisible { markers, .. } = &verdict.outcome else {
        return None;
    };

    // hint per separator position; first marker of a gap wins
    let mut separators: BTreeMap<usize, Option<String>> = BTreeMap::new();
    for marker in markers {
        let hint = |idx: usize| match marker.kind {
            MarkerKind::Conjunction | MarkerKind::EtcExpression | MarkerKind::CommaParataxis => {
                Some("enumeration".to_string())
            }
            MarkerKind::Parenthesis => Some("qualifier".to_string()),
            MarkerKind::Adposition => {
                Some(entry.tokens[idx].lemma_or_surface().to_string())
            }
        };
        for &idx in &marker.token_indices {
            separators.entry(idx).or_insert_with(|| hint(idx));
        }
    }

    // maximal runs between separators; runs without a word token join the
    // separator residue so that spans + separators cover the whole entry
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..=entry.tokens.len() {
        let is_sep = i == entry.tokens.len() || separators.contains_key(&i);
        match (is_sep, run_start) {
            (false, None) => run_start = Some(i),
            (true, Some(start)) => {
                let has_word = entry.tokens[start..i].iter().any(|t| t.kind == TokenKind::Word);
                if has_word {
                    spans.push((start, i));
                } else {
                    for j in start..i {
                        separators.entry(j).or_insert(None);
                    }
                }
                run_start = None;
            }
            _ => {}
        }
    }
    if spans.len() < 2 {
        return None;
    }

    let mut constituents = Vec::with_capacity(spans.len());
    for &(start, end) in &spans {
        let mut sub = ConceptEntry::new(
            format!("{}[{start}..{end}]", entry.entry_id),
            constituent_text(entry, start, end),
            entry.lang.clone(),
            entry.corpus_id.clone(),
        );
        sub.tokens = entry.tokens[start..end]
            .iter()
            .enumerate()
            .map(|(offset, token)| {
                let mut t = token.clone();
                t.index = offset;
                if offset == 0 {
                    t.gap_before = String::new();
                }
                t
            })
            .collect();
        let indivisible = classify(&sub, rules)
            .map(|v| v.is_indivisible())
            .unwrap_or(false);
        constituents.push(Constituent {
            start,
            end,
            label: sub.raw_label,
            indivisible,
        });
    }

    let hints = spans
        .windows(2)
        .map(|pair| {
            let gap = pair[0].1..pair[1].0;
            gap.clone()
                .filter_map(|i| separators.get(&i).cloned().flatten())
                .next()
        })
        .collect();

    let confidence = if constituents.iter().all(|c| c.indivisible) {
        Confidence::High
    } else {
        Confidence::Low
    };
    Some(Decomposition {
        entry_id: entry.entry_id.clone(),
        lang: entry.lang.clone(),
        source_label: entry.raw_label.clone(),
        constituents,
        hints,
        confidence,
        separator_indices: separators.into_keys().collect(),
    })
}

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const SKOS_CONCEPT: &str = "http://www.w3.org/2004/02/skos/core#Concept";
const SKOS_PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
const SKOS_RELATED: &str = "http://www.w3.org/2004/02/skos/core#related";
const DCT_SOURCE: &str = "http://purl.org/dc/terms/source";

/// One proposed concept in the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProposalRecord {
    pub iri: String,
    pub source_entry: String,
    pub label: String,
    pub confidence: Confidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation_hint: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProposalSidecar {
    pub base_iri: String,
    pub proposals: Vec<ProposalRecord>,
}

/// N-Triples text plus the sidecar records for one decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Fragment {
    pub triples: Vec<String>,
    pub records: Vec<ProposalRecord>,
}

fn validate_base_iri(base_iri: &str) -> Result<()> {
    let err = |reason: &str| Error::InvalidBaseIri {
        iri: base_iri.to_string(),
        reason: reason.to_string(),
    };
    let colon = base_iri.find(':').ok_or_else(|| err("missing scheme"))?;
    let scheme = &base_iri[..colon];
    let mut chars = scheme.chars();
    let valid_scheme = chars
        .next()
        .map_or(false, |c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    if !valid_scheme {
        return Err(err("invalid scheme"));
    }
    if base_iri
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
    {
        return Err(err("contains characters not allowed in an IRI"));
    }
    Ok(())
}

fn slug(label: &str) -> String {
    let mut out = String::new();
    for c in label.to_lowercase().chars() {
        if c.is_alphanumeric() {
            out.push(c);
        } else if c.is_whitespace() || c == '-' {
            if !out.ends_with('-') && !out.is_empty() {
                out.push('-');
            }
        }
    }
    out.trim_matches('-').to_string()
}

fn nt_escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out
}

fn looks_like_iri(s: &str) -> bool {
    validate_base_iri(s).is_ok() && s.contains(':')
}

/// Turn a decomposition into proposal triples: one concept node per distinct
/// constituent slug, a prefLabel in the source language, relatedness links
/// between adjacent constituents, and a provenance link to the source entry.
pub fn emit_fragment(decomposition: &Decomposition, base_iri: &str) -> Result<Fragment> {
    validate_base_iri(base_iri)?;

    let mut triples = Vec::new();
    let mut records = Vec::new();
    let mut node_of: BTreeMap<String, String> = BTreeMap::new();
    let mut nodes_in_order: Vec<String> = Vec::new();

    for (i, constituent) in decomposition.constituents.iter().enumerate() {
        let mut s = slug(&constituent.label);
        if s.is_empty() {
            s = format!("c{}", i + 1);
        }
        let node = format!("{base_iri}{s}");
        let fresh = !node_of.contains_key(&s);
        if fresh {
            node_of.insert(s, node.clone());
            triples.push(format!("<{node}> <{RDF_TYPE}> <{SKOS_CONCEPT}> ."));
            triples.push(format!(
                "<{node}> <{SKOS_PREF_LABEL}> \"{}\"@{} .",
                nt_escape(&constituent.label),
                decomposition.lang
            ));
            let provenance_object = if looks_like_iri(&decomposition.entry_id) {
                format!("<{}>", decomposition.entry_id)
            } else {
                format!("\"{}\"", nt_escape(&decomposition.entry_id))
            };
            triples.push(format!("<{node}> <{DCT_SOURCE}> {provenance_object} ."));
            records.push(ProposalRecord {
                iri: node.clone(),
                source_entry: decomposition.entry_id.clone(),
                label: constituent.label.clone(),
                confidence: if constituent.indivisible {
                    decomposition.confidence
                } else {
                    Confidence::Low
                },
                relation_hint: decomposition
                    .hints
                    .get(i)
                    .cloned()
                    .flatten(),
            });
        }
        nodes_in_order.push(node);
    }

    for pair in nodes_in_order.windows(2) {
        if pair[0] != pair[1] {
            triples.push(format!("<{}> <{SKOS_RELATED}> <{}> .", pair[0], pair[1]));
        }
    }

    Ok(Fragment { triples, records })
}

/// Assemble fragments into one proposal document. The output is flagged as a
/// proposal and never asserts the source vocabulary's content.
pub fn proposal_document(fragments: &[Fragment]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# PROPOSAL — decomposition candidates, not assertions.");
    let _ = writeln!(out, "# Each concept carries its source entry via dcterms:source.");
    for fragment in fragments {
        for triple in &fragment.triples {
            let _ = writeln!(out, "{triple}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::tagged_entry;

    fn rules() -> RuleSet {
        RuleSet::builtin()
    }

    fn split_of(pairs: &[(&str, &str)]) -> Option<Decomposition> {
        let entry = tagged_entry(pairs);
        let verdict = classify(&entry, &rules()).unwrap();
        split(&entry, &verdict, &rules())
    }

    #[test]
    fn adposition_split_keeps_head_and_tail() {
        // "Sports for children"
        let d = split_of(&[
            ("Sports", "NoCmNePlNm"),
            ("for", "AsSp"),
            ("children", "NoCmNePlAc"),
        ])
        .unwrap();
        let labels: Vec<&str> = d.constituents.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["Sports", "children"]);
        assert_eq!(d.hints, vec![Some("for".to_string())]);
        assert_eq!(d.confidence, Confidence::High);
    }

    #[test]
    fn parataxis_split_yields_all_constituents() {
        // "Ceiling, walls, doors, windows"
        let d = split_of(&[
            ("Ceiling", "NoCmFeSgNm"),
            (",", "PuCm"),
            ("walls", "NoCmFePlNm"),
            (",", "PuCm"),
            ("doors", "NoCmFePlNm"),
            (",", "PuCm"),
            ("windows", "NoCmNePlNm"),
        ])
        .unwrap();
        assert_eq!(d.constituents.len(), 4);
        assert!(d.hints.iter().all(|h| h.as_deref() == Some("enumeration")));
    }

    #[test]
    fn conjunction_split_reclassifies_compound_tail() {
        // "Oil and natural gas" → ["Oil", "natural gas"], tail indivisible
        let d = split_of(&[
            ("Oil", "NoCmNeSgNm"),
            ("and", "CjCo"),
            ("natural", "AjBaNeSgNm"),
            ("gas", "NoCmNeSgNm"),
        ])
        .unwrap();
        let labels: Vec<&str> = d.constituents.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["Oil", "natural gas"]);
        assert!(d.constituents[1].indivisible, "Adj+N re-classifies as indivisible");
        assert_eq!(d.confidence, Confidence::High);
    }

    #[test]
    fn split_never_fires_on_indivisible_entries() {
        let entry = tagged_entry(&[("χάρτης", "NoCmMaSgNm")]);
        let verdict = classify(&entry, &rules()).unwrap();
        assert!(split(&entry, &verdict, &rules()).is_none());
    }

    #[test]
    fn spans_and_separators_cover_the_entry() {
        let entry = tagged_entry(&[
            ("Oil", "NoCmNeSgNm"),
            ("and", "CjCo"),
            ("natural", "AjBaNeSgNm"),
            ("gas", "NoCmNeSgNm"),
        ]);
        let verdict = classify(&entry, &rules()).unwrap();
        let d = split(&entry, &verdict, &rules()).unwrap();
        let mut covered: Vec<usize> = d
            .constituents
            .iter()
            .flat_map(|c| c.start..c.end)
            .chain(d.separator_indices.iter().copied())
            .collect();
        covered.sort_unstable();
        assert_eq!(covered, (0..entry.tokens.len()).collect::<Vec<_>>());

        // concatenating constituent surfaces with the removed separators
        // reproduces the source label
        let rebuilt: String = entry
            .tokens
            .iter()
            .map(|t| format!("{}{}", t.gap_before, t.surface))
            .collect();
        assert_eq!(rebuilt, entry.raw_label);
    }

    #[test]
    fn qualifier_hint_for_parentheses() {
        let d = split_of(&[
            ("Ερμής", "NoPrMaSgNm"),
            ("(", "PuOp"),
            ("θεότητα", "NoCmFeSgNm"),
            (")", "PuCl"),
        ])
        .unwrap();
        assert_eq!(d.constituents.len(), 2);
        assert_eq!(d.hints, vec![Some("qualifier".to_string())]);
    }

    #[test]
    fn fragment_counts_for_two_constituents() {
        let d = split_of(&[
            ("Sports", "NoCmNePlNm"),
            ("for", "AsSp"),
            ("children", "NoCmNePlAc"),
        ])
        .unwrap();
        let fragment = emit_fragment(&d, "http://example.org/p/").unwrap();
        // 2 concept nodes + 2 labels + 2 provenance + 1 relatedness
        assert_eq!(fragment.triples.len(), 7);
        assert_eq!(fragment.records.len(), 2);
        assert!(fragment.triples.iter().any(|t| t.contains("skos/core#related")));
    }

    #[test]
    fn identical_constituents_share_one_node() {
        let d = split_of(&[
            ("a", "NoCmFeSgNm"),
            ("και", "CjCo"),
            ("a", "NoCmFeSgNm"),
        ])
        .unwrap();
        let fragment = emit_fragment(&d, "http://example.org/p/").unwrap();
        // one node: type + label + provenance, no self-relatedness
        assert_eq!(fragment.triples.len(), 3);
        assert_eq!(fragment.records.len(), 1);
    }

    #[test]
    fn invalid_base_iri_is_rejected() {
        let d = split_of(&[
            ("a", "NoCmFeSgNm"),
            ("και", "CjCo"),
            ("b", "NoCmFeSgNm"),
        ])
        .unwrap();
        assert!(matches!(
            emit_fragment(&d, "not an iri"),
            Err(Error::InvalidBaseIri { .. })
        ));
        assert!(emit_fragment(&d, "urn:proposal:").is_ok());
    }
}

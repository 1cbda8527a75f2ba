//! End-to-end analysis of a loaded entry stream: preprocess, tokenize,
//! deduplicate, tag, classify, aggregate. Deterministic for a given input
//! and configuration.

use std::collections::BTreeSet;

use crate::classify::{classify, MarkerKind, Outcome, RuleSet, Verdict};
use crate::diag::Diagnostic;
use crate::entry::ConceptEntry;
use crate::error::Result;
use crate::metrics::{CorpusReport, CorpusTally, Thresholds};
use crate::morphotag::LexiconTagger;
use crate::tokenize;

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub strip_set: BTreeSet<char>,
    pub dedup: bool,
    pub top_k: usize,
    pub thresholds: Thresholds,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            strip_set: tokenize::strip_set_from(tokenize::DEFAULT_STRIP_SET),
            dedup: true,
            top_k: 10,
            thresholds: Thresholds::default(),
        }
    }
}

/// Entries with their verdicts plus the aggregated report.
#[derive(Debug, Clone)]
pub struct AnalyzedCorpus {
    pub entries: Vec<ConceptEntry>,
    pub verdicts: Vec<Verdict>,
    pub report: CorpusReport,
}

/// Run the pipeline over loaded entries. Entries that arrive tokenized and
/// tagged (pre-tagged sources) pass through untouched; everything else is
/// preprocessed, tokenized and tagged here.
pub fn analyze_entries(
    mut entries: Vec<ConceptEntry>,
    corpus_id: &str,
    tagger: &LexiconTagger,
    rules: &RuleSet,
    options: &AnalysisOptions,
    mut diagnostics: Vec<Diagnostic>,
) -> Result<AnalyzedCorpus> {
    // normalize and tokenize entries that are not pre-tokenized
    let mut prepared: Vec<ConceptEntry> = Vec::with_capacity(entries.len());
    for mut entry in entries.drain(..) {
        if entry.tokens.is_empty() {
            match tokenize::preprocess(&entry.raw_label, &options.strip_set) {
                Ok(normalized) => {
                    entry.raw_label = normalized;
                    entry.tokens = tokenize::tokenize(&entry.raw_label);
                }
                Err(_) => {
                    diagnostics.push(Diagnostic::warning(
                        "entry-dropped",
                        format!(
                            "{}: label empty after preprocessing, entry excluded",
                            entry.entry_id
                        ),
                    ));
                    continue;
                }
            }
        }
        prepared.push(entry);
    }

    if options.dedup {
        let before = prepared.len();
        let (kept, removed) = tokenize::deduplicate(prepared);
        prepared = kept;
        diagnostics.push(Diagnostic::info(
            "dedup",
            format!(
                "{removed} of {before} entries removed as duplicates \
                 (key: case-sensitive exact match after whitespace normalization)"
            ),
        ));
    }

    let mut verdicts: Vec<Verdict> = Vec::with_capacity(prepared.len());
    let mut tally = CorpusTally::default();
    let mut single_comma_divisible = 0u64;
    for entry in &mut prepared {
        tagger.tag_entry(entry, &mut diagnostics);
        let verdict = classify(entry, rules)?;
        tally.observe(entry, &verdict);
        if let Outcome::Divisible { markers, .. } = &verdict.outcome {
            if markers
                .iter()
                .any(|m| m.kind == MarkerKind::CommaParataxis && m.token_indices.len() == 1)
            {
                single_comma_divisible += 1;
            }
        }
        verdicts.push(verdict);
    }
    if single_comma_divisible > 0 {
        diagnostics.push(Diagnostic::info(
            "single-comma-policy",
            format!(
                "{single_comma_divisible} entries counted divisible from a single \
                 non-inversion comma (parataxis reading)"
            ),
        ));
    }

    let report = tally.report(corpus_id, options.top_k, options.thresholds, diagnostics)?;
    Ok(AnalyzedCorpus {
        entries: prepared,
        verdicts,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(labels: &[&str]) -> AnalyzedCorpus {
        let entries: Vec<ConceptEntry> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| ConceptEntry::new(format!("t:{}", i + 1), *l, "el", "t"))
            .collect();
        analyze_entries(
            entries,
            "t",
            &LexiconTagger::builtin(),
            &RuleSet::builtin(),
            &AnalysisOptions::default(),
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn pipeline_counts_and_classifies() {
        let out = analyze(&[
            "χάρτης εκπαιδευτικών ιδρυμάτων",
            "πετρέλαιο και φυσικό αέριο",
            "ασφάλεια ζωής",
        ]);
        assert_eq!(out.report.general.entries, 3);
        assert_eq!(out.report.divisibility_summary.unique_union.count, 1);
        assert!(out.verdicts[0].is_indivisible());
        assert!(out.verdicts[1].is_divisible());
    }

    #[test]
    fn empty_labels_are_dropped_with_diagnostics() {
        let entries = vec![ConceptEntry::new("t:1", "%%", "el", "t")];
        let out = analyze_entries(
            entries,
            "t",
            &LexiconTagger::builtin(),
            &RuleSet::builtin(),
            &AnalysisOptions::default(),
            Vec::new(),
        )
        .unwrap();
        assert_eq!(out.entries.len(), 0);
        assert!(out
            .report
            .diagnostics
            .iter()
            .any(|d| d.code == "entry-dropped"));
    }

    #[test]
    fn dedup_can_be_disabled() {
        let entries = vec![
            ConceptEntry::new("t:1", "ασφάλεια ζωής", "el", "t"),
            ConceptEntry::new("t:2", "ασφάλεια ζωής", "el", "t"),
        ];
        let mut options = AnalysisOptions::default();
        options.dedup = false;
        let out = analyze_entries(
            entries,
            "t",
            &LexiconTagger::builtin(),
            &RuleSet::builtin(),
            &options,
            Vec::new(),
        )
        .unwrap();
        assert_eq!(out.report.general.entries, 2);
    }
}

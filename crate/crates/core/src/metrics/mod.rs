//! Aggregation of verdicts and token statistics into the report tables:
//! general counts, part-of-speech distribution, top-k syntactic patterns,
//! the noun-noun case breakdown, the divisibility summary, and the
//! migration-suitability verdict.
//!
//! Counting is a commutative-monoid fold over entries ([`CorpusTally`]):
//! per-shard tallies merge into the same report as a single pass.

mod render;

pub use render::{render, ReportFormat};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{DivisibilityType, Outcome, Verdict};
use crate::diag::Diagnostic;
use crate::entry::ConceptEntry;
use crate::error::{Error, Result};
use crate::morphotag::{Case, PosCategory, WordClass};
use crate::numfmt;
use crate::tokenize::UnitCounts;

/// count-of-total with the percentage stored alongside its numerator and
/// denominator, so every displayed figure is recomputable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Share {
    pub count: u64,
    pub total: u64,
    /// Full-precision percentage; None when the denominator is zero.
    pub pct: Option<f64>,
}

impl Share {
    pub fn new(count: u64, total: u64) -> Self {
        let pct = (total > 0).then(|| count as f64 / total as f64 * 100.0);
        Share { count, total, pct }
    }

    /// Two decimals, half-up, or "n/a" for an empty denominator.
    pub fn pct_2dp(&self) -> String {
        numfmt::pct_2dp(self.count, self.total).unwrap_or_else(|| "n/a".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosRow {
    pub category: String,
    pub subtype: String,
    pub share: Share,
}

/// Per (category, subtype) token counts; percentages refer to tokens, the
/// closed-class share to words.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosDistribution {
    pub total_tokens: u64,
    pub rows: Vec<PosRow>,
    pub closed_class_words: Share,
}

/// Wholesale divisibility annotation of a pattern row: indivisible,
/// divisible, or in need of further analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisibilityAnnotation {
    #[serde(rename = "i")]
    Indivisible,
    #[serde(rename = "d")]
    Divisible,
    #[serde(rename = "f.a.")]
    FurtherAnalysis,
}

impl DivisibilityAnnotation {
    pub fn label(self) -> &'static str {
        match self {
            DivisibilityAnnotation::Indivisible => "i",
            DivisibilityAnnotation::Divisible => "d",
            DivisibilityAnnotation::FurtherAnalysis => "f.a.",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub indivisible: u64,
    pub divisible: u64,
    pub undetermined: u64,
}

impl VerdictCounts {
    /// Modal annotation; ties prefer indivisible, then divisible.
    fn modal(&self) -> DivisibilityAnnotation {
        let mut best = (self.indivisible, DivisibilityAnnotation::Indivisible);
        if self.divisible > best.0 {
            best = (self.divisible, DivisibilityAnnotation::Divisible);
        }
        if self.undetermined > best.0 {
            best = (self.undetermined, DivisibilityAnnotation::FurtherAnalysis);
        }
        best.1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternRow {
    pub pattern: String,
    pub share: Share,
    pub annotation: DivisibilityAnnotation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictCounts>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndivisibleCoverage {
    /// Indivisible entries whose pattern is in the top-k rows, over all entries.
    pub within_top_k: Share,
    /// All indivisible entries over all entries.
    pub overall: Share,
}

/// The top-k pattern table with its Sum row and the pattern-inventory
/// figures (distinct patterns, patterns occurring exactly once).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternTable {
    pub k: usize,
    pub rows: Vec<PatternRow>,
    pub sum: Share,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_patterns: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singleton_patterns: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indivisible_coverage: Option<IndivisibleCoverage>,
}

impl PatternTable {
    /// Build the table from already-published frequencies (row order is kept
    /// as given). When `declared_sum` disagrees with the actual row total,
    /// the computed total wins and a discrepancy diagnostic is emitted.
    pub fn from_published_rows(
        rows: &[(&str, u64, DivisibilityAnnotation)],
        total_entries: u64,
        declared_sum: Option<u64>,
        diags: &mut Vec<Diagnostic>,
    ) -> Result<PatternTable> {
        if rows.is_empty() {
            return Err(Error::Config("pattern table needs at least one row".into()));
        }
        let computed: u64 = rows.iter().map(|(_, freq, _)| freq).sum();
        if let Some(declared) = declared_sum {
            if declared != computed {
                diags.push(Diagnostic::warning(
                    "sum-mismatch",
                    format!(
                        "pattern table declares a sum of {declared} but its rows total {computed}; reporting the computed value"
                    ),
                ));
            }
        }
        Ok(PatternTable {
            k: rows.len(),
            rows: rows
                .iter()
                .map(|(pattern, freq, annotation)| PatternRow {
                    pattern: pattern.to_string(),
                    share: Share::new(*freq, total_entries),
                    annotation: *annotation,
                    verdicts: None,
                })
                .collect(),
            sum: Share::new(computed, total_entries),
            distinct_patterns: None,
            singleton_patterns: None,
            indivisible_coverage: None,
        })
    }
}

/// The noun-noun pattern broken down by grammatical case: second noun in
/// the genitive, nominative-nominative/accusative pairs, and the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NnBreakdown {
    pub second_genitive: Share,
    pub nominative_pair: Share,
    pub subsum: u64,
    pub total: Share,
    pub non_complying: u64,
}

impl NnBreakdown {
    pub fn from_counts(
        second_genitive: u64,
        nominative_pair: u64,
        total: u64,
        total_entries: u64,
    ) -> Result<NnBreakdown> {
        let subsum = second_genitive + nominative_pair;
        if subsum > total {
            return Err(Error::Config(format!(
                "noun-noun subsets sum to {subsum}, more than the pattern total {total}"
            )));
        }
        Ok(NnBreakdown {
            second_genitive: Share::new(second_genitive, total_entries),
            nominative_pair: Share::new(nominative_pair, total_entries),
            subsum,
            total: Share::new(total, total_entries),
            non_complying: total - subsum,
        })
    }
}

/// Entries carrying enumeration markers, composite markers, and the unique
/// union of the two (an entry may carry both).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisibilitySummary {
    pub enumeration: Share,
    pub composite: Share,
    pub unique_union: Share,
}

impl DivisibilitySummary {
    pub fn from_counts(
        enumeration: u64,
        composite: u64,
        unique_union: u64,
        total_entries: u64,
    ) -> Result<DivisibilitySummary> {
        if unique_union > enumeration + composite {
            return Err(Error::Config(format!(
                "unique union {unique_union} exceeds the type-count sum {}",
                enumeration + composite
            )));
        }
        if enumeration > unique_union || composite > unique_union {
            return Err(Error::Config(
                "a divisibility type count exceeds the unique union".into(),
            ));
        }
        Ok(DivisibilitySummary {
            enumeration: Share::new(enumeration, total_entries),
            composite: Share::new(composite, total_entries),
            unique_union: Share::new(unique_union, total_entries),
        })
    }
}

/// Ordinal migration-suitability verdict, Low < Moderate < High.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuitabilityVerdict {
    Low,
    Moderate,
    High,
}

/// Divisible-share thresholds separating the three verdicts, in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Below this divisible share the verdict is High.
    pub high_below: f64,
    /// Above this divisible share the verdict is Low; in between, Moderate.
    pub low_above: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            high_below: 10.0,
            low_above: 30.0,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        if !(self.high_below < self.low_above) || self.high_below < 0.0 {
            return Err(Error::Config(format!(
                "thresholds must be strictly increasing and non-negative, got {}/{}",
                self.high_below, self.low_above
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suitability {
    /// None when the corpus is empty and the share is undefined.
    pub verdict: Option<SuitabilityVerdict>,
    pub divisible_pct: Option<f64>,
    pub thresholds: Thresholds,
    pub rationale: String,
}

/// Suitability from the divisibility summary. The thresholds are an
/// explicitly configurable heuristic over the unique divisible share.
pub fn suitability(summary: &DivisibilitySummary, thresholds: Thresholds) -> Suitability {
    let Some(pct) = summary.unique_union.pct else {
        return Suitability {
            verdict: None,
            divisible_pct: None,
            thresholds,
            rationale: "empty corpus: divisible share is undefined".into(),
        };
    };
    let verdict = if pct < thresholds.high_below {
        SuitabilityVerdict::High
    } else if pct <= thresholds.low_above {
        SuitabilityVerdict::Moderate
    } else {
        SuitabilityVerdict::Low
    };
    let rationale = format!(
        "{}% of entries are divisible (enumeration {}%, composite {}%); \
         {} suitability under the {}/{} thresholds",
        summary.unique_union.pct_2dp(),
        summary.enumeration.pct_2dp(),
        summary.composite.pct_2dp(),
        match verdict {
            SuitabilityVerdict::High => "high",
            SuitabilityVerdict::Moderate => "moderate",
            SuitabilityVerdict::Low => "low",
        },
        numfmt::f64_2dp(thresholds.high_below),
        numfmt::f64_2dp(thresholds.low_above),
    );
    Suitability {
        verdict: Some(verdict),
        divisible_pct: Some(pct),
        thresholds,
        rationale,
    }
}

/// The full report for one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub corpus_id: String,
    pub general: UnitCounts,
    pub pos_distribution: PosDistribution,
    pub pattern_table: PatternTable,
    pub nn_breakdown: NnBreakdown,
    pub divisibility_summary: DivisibilitySummary,
    pub suitability: Suitability,
    pub diagnostics: Vec<Diagnostic>,
}

/// Per-pattern accumulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PatternAgg {
    pub freq: u64,
    pub verdicts: VerdictCounts,
}

/// Commutative-monoid fold over classified entries. Merging shard tallies
/// is exactly equivalent to observing every entry in one pass.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusTally {
    pub entries: u64,
    pub tokens: u64,
    pub words: u64,
    pub pos: BTreeMap<(PosCategory, String), u64>,
    pub closed_class_words: u64,
    pub patterns: BTreeMap<String, PatternAgg>,
    pub nn_second_genitive: u64,
    pub nn_nominative_pair: u64,
    pub nn_total: u64,
    pub enumeration_entries: u64,
    pub composite_entries: u64,
    pub divisible_entries: u64,
    pub indivisible_entries: u64,
}

impl CorpusTally {
    pub fn observe(&mut self, entry: &ConceptEntry, verdict: &Verdict) {
        self.entries += 1;
        self.tokens += entry.tokens.len() as u64;
        self.words += entry.word_count() as u64;

        for token in &entry.tokens {
            let Some(tag) = &token.tag else { continue };
            let subtype = tag.pos_type_label().unwrap_or("").to_string();
            *self.pos.entry((tag.category, subtype)).or_default() += 1;
            if tag.category.word_class() == WordClass::Closed {
                self.closed_class_words += 1;
            }
        }

        let canonical = verdict.pattern.canonical();
        let agg = self.patterns.entry(canonical.clone()).or_default();
        agg.freq += 1;
        match &verdict.outcome {
            Outcome::Indivisible { .. } => {
                agg.verdicts.indivisible += 1;
                self.indivisible_entries += 1;
            }
            Outcome::Divisible { types, .. } => {
                agg.verdicts.divisible += 1;
                self.divisible_entries += 1;
                if types.contains(&DivisibilityType::Enumeration) {
                    self.enumeration_entries += 1;
                }
                if types.contains(&DivisibilityType::Composite) {
                    self.composite_entries += 1;
                }
            }
            Outcome::Undetermined { .. } => agg.verdicts.undetermined += 1,
        }

        if canonical == "N+N" {
            self.nn_total += 1;
            let case_of = |i: usize| entry.tokens[i].tag.as_ref().and_then(|t| t.case);
            let (first, second) = (case_of(0), case_of(1));
            if second == Some(Case::Gen) {
                self.nn_second_genitive += 1;
            } else if first == Some(Case::Nom)
                && matches!(second, Some(Case::Nom) | Some(Case::Acc))
            {
                self.nn_nominative_pair += 1;
            }
        }
    }

    pub fn absorb(&mut self, other: CorpusTally) {
        self.entries += other.entries;
        self.tokens += other.tokens;
        self.words += other.words;
        for (key, count) in other.pos {
            *self.pos.entry(key).or_default() += count;
        }
        self.closed_class_words += other.closed_class_words;
        for (pattern, agg) in other.patterns {
            let mine = self.patterns.entry(pattern).or_default();
            mine.freq += agg.freq;
            mine.verdicts.indivisible += agg.verdicts.indivisible;
            mine.verdicts.divisible += agg.verdicts.divisible;
            mine.verdicts.undetermined += agg.verdicts.undetermined;
        }
        self.nn_second_genitive += other.nn_second_genitive;
        self.nn_nominative_pair += other.nn_nominative_pair;
        self.nn_total += other.nn_total;
        self.enumeration_entries += other.enumeration_entries;
        self.composite_entries += other.composite_entries;
        self.divisible_entries += other.divisible_entries;
        self.indivisible_entries += other.indivisible_entries;
    }

    /// Part-of-speech table: counts and token percentages in category order,
    /// plus the closed-class share of words.
    pub fn pos_distribution(&self, diags: &mut Vec<Diagnostic>) -> PosDistribution {
        if self.tokens == 0 {
            diags.push(Diagnostic::warning(
                "empty-corpus",
                "no tokens: part-of-speech distribution is empty",
            ));
        }
        let rows = self
            .pos
            .iter()
            .map(|((category, subtype), count)| PosRow {
                category: category.name().to_string(),
                subtype: subtype.clone(),
                share: Share::new(*count, self.tokens),
            })
            .collect();
        PosDistribution {
            total_tokens: self.tokens,
            rows,
            closed_class_words: Share::new(self.closed_class_words, self.words),
        }
    }

    /// Top-k patterns by frequency, ties broken lexicographically by the
    /// canonical string.
    pub fn pattern_table(&self, k: usize) -> Result<PatternTable> {
        if k < 1 {
            return Err(Error::Config("top-k must be at least 1".into()));
        }
        let mut ranked: Vec<(&String, &PatternAgg)> = self.patterns.iter().collect();
        ranked.sort_by(|(pa, a), (pb, b)| b.freq.cmp(&a.freq).then_with(|| pa.cmp(pb)));
        ranked.truncate(k);

        let rows: Vec<PatternRow> = ranked
            .iter()
            .map(|(pattern, agg)| PatternRow {
                pattern: (*pattern).clone(),
                share: Share::new(agg.freq, self.entries),
                annotation: agg.verdicts.modal(),
                verdicts: Some(agg.verdicts),
            })
            .collect();
        let sum: u64 = ranked.iter().map(|(_, agg)| agg.freq).sum();
        let top_k_indivisible: u64 = ranked.iter().map(|(_, agg)| agg.verdicts.indivisible).sum();
        Ok(PatternTable {
            k,
            rows,
            sum: Share::new(sum, self.entries),
            distinct_patterns: Some(self.patterns.len() as u64),
            singleton_patterns: Some(
                self.patterns.values().filter(|agg| agg.freq == 1).count() as u64,
            ),
            indivisible_coverage: Some(IndivisibleCoverage {
                within_top_k: Share::new(top_k_indivisible, self.entries),
                overall: Share::new(self.indivisible_entries, self.entries),
            }),
        })
    }

    pub fn nn_breakdown(&self) -> Result<NnBreakdown> {
        NnBreakdown::from_counts(
            self.nn_second_genitive,
            self.nn_nominative_pair,
            self.nn_total,
            self.entries,
        )
    }

    pub fn divisibility_summary(&self) -> Result<DivisibilitySummary> {
        DivisibilitySummary::from_counts(
            self.enumeration_entries,
            self.composite_entries,
            self.divisible_entries,
            self.entries,
        )
    }

    /// Assemble the full report. Diagnostics are sorted for determinism.
    pub fn report(
        &self,
        corpus_id: &str,
        k: usize,
        thresholds: Thresholds,
        mut diagnostics: Vec<Diagnostic>,
    ) -> Result<CorpusReport> {
        thresholds.validate()?;
        let general = UnitCounts::from_totals(self.entries, self.tokens, self.words);
        let pos_distribution = self.pos_distribution(&mut diagnostics);
        let pattern_table = self.pattern_table(k)?;
        let nn_breakdown = self.nn_breakdown()?;
        let divisibility_summary = self.divisibility_summary()?;
        let suitability = suitability(&divisibility_summary, thresholds);
        diagnostics.sort();
        diagnostics.dedup();
        Ok(CorpusReport {
            corpus_id: corpus_id.to_string(),
            general,
            pos_distribution,
            pattern_table,
            nn_breakdown,
            divisibility_summary,
            suitability,
            diagnostics,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, RuleSet};
    use crate::testutil::tagged_entry;

    fn observe_all(entries: &[ConceptEntry]) -> CorpusTally {
        let rules = RuleSet::builtin();
        let mut tally = CorpusTally::default();
        for e in entries {
            let verdict = classify(e, &rules).unwrap();
            tally.observe(e, &verdict);
        }
        tally
    }

    #[test]
    fn pos_distribution_percentages_are_over_tokens() {
        // 100 synthetic tokens, 55 common nouns
        let mut entries = Vec::new();
        for _ in 0..55 {
            entries.push(tagged_entry(&[("λέξη", "NoCmFeSgNm")]));
        }
        for _ in 0..45 {
            entries.push(tagged_entry(&[("καλός", "AjBaMaSgNm")]));
        }
        let tally = observe_all(&entries);
        let mut diags = Vec::new();
        let dist = tally.pos_distribution(&mut diags);
        let noun_row = dist
            .rows
            .iter()
            .find(|r| r.category == "Noun" && r.subtype == "Common")
            .unwrap();
        assert_eq!(noun_row.share.count, 55);
        assert_eq!(noun_row.share.pct_2dp(), "55.00");
    }

    #[test]
    fn published_common_noun_share() {
        // fixture arithmetic against published token totals
        let share = Share::new(8_443, 15_234);
        assert_eq!(share.pct_2dp(), "55.42");
    }

    #[test]
    fn zero_token_corpus_warns_and_is_empty() {
        let tally = CorpusTally::default();
        let mut diags = Vec::new();
        let dist = tally.pos_distribution(&mut diags);
        assert!(dist.rows.is_empty());
        assert!(diags.iter().any(|d| d.code == "empty-corpus"));
    }

    #[test]
    fn closed_class_share_counts_words_not_tokens() {
        // one closed-class word among two words and one comma: 1/2 of words
        let entries = vec![tagged_entry(&[
            ("λέξη", "NoCmFeSgNm"),
            (",", "PuCm"),
            ("και", "CjCo"),
        ])];
        let tally = observe_all(&entries);
        let mut diags = Vec::new();
        let dist = tally.pos_distribution(&mut diags);
        assert_eq!(dist.closed_class_words.count, 1);
        assert_eq!(dist.closed_class_words.total, 2);
    }

    #[test]
    fn pattern_table_single_entry_is_total() {
        let entries = vec![tagged_entry(&[("λέξη", "NoCmFeSgNm")])];
        let tally = observe_all(&entries);
        let table = tally.pattern_table(10).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].share.pct_2dp(), "100.00");
        assert_eq!(table.sum.count, 1);
    }

    #[test]
    fn pattern_table_rejects_zero_k() {
        let tally = CorpusTally::default();
        assert!(tally.pattern_table(0).is_err());
    }

    #[test]
    fn pattern_table_tie_break_is_lexicographic() {
        let entries = vec![
            tagged_entry(&[("α", "NoCmFeSgNm")]),
            tagged_entry(&[("07", "Di")]),
        ];
        let tally = observe_all(&entries);
        let table = tally.pattern_table(1).unwrap();
        assert_eq!(table.rows[0].pattern, "Dig"); // "Dig" < "N"
    }

    #[test]
    fn nn_breakdown_subsets_are_disjoint() {
        let entries = vec![
            // second noun genitive
            tagged_entry(&[("ασφάλεια", "NoCmFeSgNm"), ("ζωής", "NoCmFeSgGe")]),
            // nominative pair
            tagged_entry(&[("αδελφές", "NoCmFePlNm"), ("ψυχές", "NoCmFePlNm")]),
            // nominative + accusative
            tagged_entry(&[("a", "NoCmFeSgNm"), ("b", "NoCmFeSgAc")]),
            // non-complying: genitive first
            tagged_entry(&[("a", "NoCmFeSgGe"), ("b", "NoCmFeSgNm")]),
        ];
        let tally = observe_all(&entries);
        let nn = tally.nn_breakdown().unwrap();
        assert_eq!(nn.second_genitive.count, 1);
        assert_eq!(nn.nominative_pair.count, 2);
        assert_eq!(nn.subsum, 3);
        assert_eq!(nn.total.count, 4);
        assert_eq!(nn.non_complying, 1);
    }

    #[test]
    fn nn_breakdown_empty_corpus_is_all_zeros() {
        let tally = CorpusTally::default();
        let nn = tally.nn_breakdown().unwrap();
        assert_eq!((nn.subsum, nn.total.count, nn.non_complying), (0, 0, 0));
    }

    #[test]
    fn divisibility_union_counts_entries_once() {
        let entries = vec![
            // conjunction only
            tagged_entry(&[("a", "NoCmFeSgNm"), ("και", "CjCo"), ("b", "NoCmFeSgNm")]),
            // adposition only
            tagged_entry(&[("a", "NoCmFeSgNm"), ("για", "AsSp"), ("b", "NoCmFeSgAc")]),
            // both marker families in one entry
            tagged_entry(&[
                ("a", "NoCmFeSgNm"),
                ("και", "CjCo"),
                ("b", "NoCmFeSgNm"),
                ("(", "PuOp"),
                ("c", "NoCmFeSgNm"),
                (")", "PuCl"),
            ]),
        ];
        let tally = observe_all(&entries);
        let summary = tally.divisibility_summary().unwrap();
        assert_eq!(summary.enumeration.count, 2);
        assert_eq!(summary.composite.count, 2);
        assert_eq!(summary.unique_union.count, 3);
    }

    #[test]
    fn suitability_thresholds_split_the_three_verdicts() {
        let mk = |union: u64| {
            DivisibilitySummary::from_counts(union / 2, union - union / 2, union, 10_000).unwrap()
        };
        let s = suitability(&mk(779), Thresholds::default());
        assert_eq!(s.verdict, Some(SuitabilityVerdict::High));
        let s = suitability(&mk(2_055), Thresholds::default());
        assert_eq!(s.verdict, Some(SuitabilityVerdict::Moderate));
        let s = suitability(&mk(4_634), Thresholds::default());
        assert_eq!(s.verdict, Some(SuitabilityVerdict::Low));
        assert!(s.rationale.contains("46.34"));
    }

    #[test]
    fn suitability_verdicts_are_ordered() {
        assert!(SuitabilityVerdict::High > SuitabilityVerdict::Moderate);
        assert!(SuitabilityVerdict::Moderate > SuitabilityVerdict::Low);
    }

    #[test]
    fn invalid_thresholds_are_rejected() {
        assert!(Thresholds { high_below: 30.0, low_above: 10.0 }.validate().is_err());
        assert!(Thresholds { high_below: 10.0, low_above: 10.0 }.validate().is_err());
        assert!(Thresholds::default().validate().is_ok());
    }

    #[test]
    fn merge_equals_single_pass() {
        let entries = vec![
            tagged_entry(&[("a", "NoCmFeSgNm"), ("ζωής", "NoCmFeSgGe")]),
            tagged_entry(&[("b", "NoCmFeSgNm"), ("και", "CjCo"), ("c", "NoCmFeSgNm")]),
            tagged_entry(&[("07", "Di")]),
            tagged_entry(&[("καλός", "AjBaMaSgNm"), ("d", "NoCmMaSgNm")]),
        ];
        let single = observe_all(&entries);
        let mut left = observe_all(&entries[..2]);
        let right = observe_all(&entries[2..]);
        left.absorb(right);
        assert_eq!(left, single);
    }

    #[test]
    fn published_sum_mismatch_is_diagnosed() {
        let rows = [
            ("N", 3_353, DivisibilityAnnotation::Indivisible),
            ("Adj+N", 1_936, DivisibilityAnnotation::Indivisible),
        ];
        let mut diags = Vec::new();
        let table =
            PatternTable::from_published_rows(&rows, 10_308, Some(5_299), &mut diags).unwrap();
        assert_eq!(table.sum.count, 5_289);
        assert!(diags.iter().any(|d| d.code == "sum-mismatch"));
    }
}

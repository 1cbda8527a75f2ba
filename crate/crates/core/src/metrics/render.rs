//! Report rendering. JSON is the canonical machine format (fixed key
//! order); CSV emits one section per table with RFC-4180 quoting; Markdown
//! mirrors the table layout. Percentages print to two decimals, half-up.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::metrics::{CorpusReport, Share};
use crate::numfmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "md",
        }
    }
}

pub fn render(report: &CorpusReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)
                .map_err(|e| Error::Config(format!("report serialization failed: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Csv => Ok(to_csv(report).into_bytes()),
        ReportFormat::Markdown => Ok(to_markdown(report).into_bytes()),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(out: &mut String, fields: &[&str]) {
    let encoded: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    let _ = writeln!(out, "{}", encoded.join(","));
}

fn share_fields(share: &Share) -> (String, String, String) {
    (share.count.to_string(), share.total.to_string(), share.pct_2dp())
}

fn to_csv(report: &CorpusReport) -> String {
    let mut out = String::new();
    csv_row(&mut out, &["table", "corpus"]);
    csv_row(&mut out, &["corpus_id", &report.corpus_id]);
    out.push('\n');

    let g = &report.general;
    csv_row(&mut out, &["table", "general"]);
    csv_row(&mut out, &["metric", "value"]);
    csv_row(&mut out, &["entries", &g.entries.to_string()]);
    csv_row(&mut out, &["tokens", &g.tokens.to_string()]);
    csv_row(&mut out, &["words", &g.words.to_string()]);
    csv_row(&mut out, &[
        "words_per_entry",
        g.words_per_entry_2dp().as_deref().unwrap_or("n/a"),
    ]);
    csv_row(&mut out, &[
        "tokens_per_entry",
        g.tokens_per_entry_2dp().as_deref().unwrap_or("n/a"),
    ]);
    out.push('\n');

    csv_row(&mut out, &["table", "pos_distribution"]);
    csv_row(&mut out, &["category", "subtype", "count", "total_tokens", "pct"]);
    for row in &report.pos_distribution.rows {
        let (count, total, pct) = share_fields(&row.share);
        csv_row(&mut out, &[&row.category, &row.subtype, &count, &total, &pct]);
    }
    {
        let (count, total, pct) = share_fields(&report.pos_distribution.closed_class_words);
        csv_row(&mut out, &["closed-class", "(words)", &count, &total, &pct]);
    }
    out.push('\n');

    csv_row(&mut out, &["table", "pattern_table"]);
    csv_row(&mut out, &["pattern", "frequency", "total_entries", "pct", "annotation"]);
    for row in &report.pattern_table.rows {
        let (count, total, pct) = share_fields(&row.share);
        csv_row(&mut out, &[&row.pattern, &count, &total, &pct, row.annotation.label()]);
    }
    {
        let (count, total, pct) = share_fields(&report.pattern_table.sum);
        csv_row(&mut out, &["Sum", &count, &total, &pct, ""]);
    }
    out.push('\n');

    csv_row(&mut out, &["table", "nn_breakdown"]);
    csv_row(&mut out, &["subset", "count", "total_entries", "pct"]);
    let nn = &report.nn_breakdown;
    let (count, total, pct) = share_fields(&nn.second_genitive);
    csv_row(&mut out, &["second_genitive", &count, &total, &pct]);
    let (count, total, pct) = share_fields(&nn.nominative_pair);
    csv_row(&mut out, &["nominative_pair", &count, &total, &pct]);
    csv_row(&mut out, &["subsum", &nn.subsum.to_string(), "", ""]);
    let (count, total, pct) = share_fields(&nn.total);
    csv_row(&mut out, &["total", &count, &total, &pct]);
    csv_row(&mut out, &["non_complying", &nn.non_complying.to_string(), "", ""]);
    out.push('\n');

    csv_row(&mut out, &["table", "divisibility_summary"]);
    csv_row(&mut out, &["type", "count", "total_entries", "pct"]);
    let d = &report.divisibility_summary;
    for (name, share) in [
        ("enumeration", &d.enumeration),
        ("composite", &d.composite),
        ("unique_union", &d.unique_union),
    ] {
        let (count, total, pct) = share_fields(share);
        csv_row(&mut out, &[name, &count, &total, &pct]);
    }
    out.push('\n');

    csv_row(&mut out, &["table", "suitability"]);
    csv_row(&mut out, &[
        "verdict",
        report
            .suitability
            .verdict
            .map(|v| format!("{v:?}"))
            .as_deref()
            .unwrap_or("n/a"),
    ]);
    csv_row(&mut out, &[
        "divisible_pct",
        report
            .suitability
            .divisible_pct
            .map(numfmt::f64_2dp)
            .as_deref()
            .unwrap_or("n/a"),
    ]);
    csv_row(&mut out, &["rationale", &report.suitability.rationale]);
    out.push('\n');

    csv_row(&mut out, &["table", "diagnostics"]);
    csv_row(&mut out, &["severity", "code", "message"]);
    for diag in &report.diagnostics {
        csv_row(&mut out, &[
            &format!("{:?}", diag.severity).to_lowercase(),
            &diag.code,
            &diag.message,
        ]);
    }
    out
}

fn to_markdown(report: &CorpusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Corpus report: {}\n", report.corpus_id);

    let g = &report.general;
    let _ = writeln!(out, "## Entries, tokens and words\n");
    let _ = writeln!(out, "| Metric | Value |");
    let _ = writeln!(out, "| --- | ---: |");
    let _ = writeln!(out, "| Number of entries | {} |", g.entries);
    let _ = writeln!(out, "| Number of tokens | {} |", g.tokens);
    let _ = writeln!(out, "| Number of words | {} |", g.words);
    let _ = writeln!(
        out,
        "| Words per entry (avg) | {} |",
        g.words_per_entry_2dp().as_deref().unwrap_or("n/a")
    );
    let _ = writeln!(
        out,
        "| Tokens per entry (avg) | {} |\n",
        g.tokens_per_entry_2dp().as_deref().unwrap_or("n/a")
    );

    let _ = writeln!(out, "## Part-of-speech distribution (of tokens)\n");
    let _ = writeln!(out, "| Category | Subtype | Count | % |");
    let _ = writeln!(out, "| --- | --- | ---: | ---: |");
    for row in &report.pos_distribution.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            row.category,
            row.subtype,
            row.share.count,
            row.share.pct_2dp()
        );
    }
    let c = &report.pos_distribution.closed_class_words;
    let _ = writeln!(
        out,
        "\nClosed-class words: {} of {} words ({}%)\n",
        c.count,
        c.total,
        c.pct_2dp()
    );

    let _ = writeln!(out, "## Most frequent syntactic patterns\n");
    let _ = writeln!(out, "| Syntactic pattern | Frequency | % of entries | Divisibility |");
    let _ = writeln!(out, "| --- | ---: | ---: | --- |");
    for row in &report.pattern_table.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | [{}] |",
            row.pattern,
            row.share.count,
            row.share.pct_2dp(),
            row.annotation.label()
        );
    }
    let sum = &report.pattern_table.sum;
    let _ = writeln!(out, "| Sum | {} | {} | |", sum.count, sum.pct_2dp());
    if let (Some(distinct), Some(single)) = (
        report.pattern_table.distinct_patterns,
        report.pattern_table.singleton_patterns,
    ) {
        let _ = writeln!(
            out,
            "\n{single} of {distinct} distinct patterns occur exactly once."
        );
    }
    if let Some(cov) = &report.pattern_table.indivisible_coverage {
        let _ = writeln!(
            out,
            "Indivisible entries: {}% within the top {} patterns, {}% overall.",
            cov.within_top_k.pct_2dp(),
            report.pattern_table.k,
            cov.overall.pct_2dp()
        );
    }
    out.push('\n');

    let _ = writeln!(out, "## Noun + noun case breakdown\n");
    let nn = &report.nn_breakdown;
    let _ = writeln!(out, "| Subset | Count | % of entries |");
    let _ = writeln!(out, "| --- | ---: | ---: |");
    let _ = writeln!(
        out,
        "| second noun in genitive | {} | {} |",
        nn.second_genitive.count,
        nn.second_genitive.pct_2dp()
    );
    let _ = writeln!(
        out,
        "| nominative pair (nom/acc) | {} | {} |",
        nn.nominative_pair.count,
        nn.nominative_pair.pct_2dp()
    );
    let _ = writeln!(out, "| subsum | {} | |", nn.subsum);
    let _ = writeln!(out, "| total | {} | {} |", nn.total.count, nn.total.pct_2dp());
    let _ = writeln!(out, "| non-complying | {} | |\n", nn.non_complying);

    let _ = writeln!(out, "## Divisible entries\n");
    let d = &report.divisibility_summary;
    let _ = writeln!(out, "| Type | Count | % of entries |");
    let _ = writeln!(out, "| --- | ---: | ---: |");
    let _ = writeln!(
        out,
        "| Enumeration / parataxis | {} | {} |",
        d.enumeration.count,
        d.enumeration.pct_2dp()
    );
    let _ = writeln!(
        out,
        "| Composite | {} | {} |",
        d.composite.count,
        d.composite.pct_2dp()
    );
    let _ = writeln!(
        out,
        "| Sum (unique) | {} | {} |\n",
        d.unique_union.count,
        d.unique_union.pct_2dp()
    );

    let _ = writeln!(out, "## Migration suitability\n");
    let verdict = report
        .suitability
        .verdict
        .map(|v| format!("{v:?}"))
        .unwrap_or_else(|| "n/a".into());
    let _ = writeln!(out, "**{verdict}** — {}\n", report.suitability.rationale);

    if !report.diagnostics.is_empty() {
        let _ = writeln!(out, "## Diagnostics\n");
        for diag in &report.diagnostics {
            let _ = writeln!(
                out,
                "- ({:?}) `{}` {}",
                diag.severity, diag.code, diag.message
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, RuleSet};
    use crate::metrics::{CorpusTally, Thresholds};
    use crate::testutil::tagged_entry;

    fn sample_report() -> CorpusReport {
        let rules = RuleSet::builtin();
        let mut tally = CorpusTally::default();
        let entries = vec![
            tagged_entry(&[("ασφάλεια", "NoCmFeSgNm"), ("ζωής", "NoCmFeSgGe")]),
            tagged_entry(&[("a", "NoCmFeSgNm"), ("και", "CjCo"), ("b", "NoCmFeSgNm")]),
            tagged_entry(&[("x", "NoCmFeSgNm"), ("για", "AsSp"), ("y", "NoCmFeSgAc")]),
        ];
        for e in &entries {
            let v = classify(e, &rules).unwrap();
            tally.observe(e, &v);
        }
        tally
            .report("sample", 10, Thresholds::default(), Vec::new())
            .unwrap()
    }

    #[test]
    fn json_round_trips_structurally() {
        let report = sample_report();
        let bytes = render(&report, ReportFormat::Json).unwrap();
        let parsed: CorpusReport = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn json_rendering_is_deterministic() {
        let a = render(&sample_report(), ReportFormat::Json).unwrap();
        let b = render(&sample_report(), ReportFormat::Json).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn markdown_divisibility_summary_has_three_data_rows() {
        let md = String::from_utf8(render(&sample_report(), ReportFormat::Markdown).unwrap())
            .unwrap();
        let section = md.split("## Divisible entries").nth(1).unwrap();
        let rows = section
            .lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| Type") && !l.starts_with("| ---"))
            .count();
        assert_eq!(rows, 3);
    }

    #[test]
    fn csv_cells_reparse_within_display_rounding() {
        let report = sample_report();
        let csv = String::from_utf8(render(&report, ReportFormat::Csv).unwrap()).unwrap();
        let mut in_divisibility = false;
        let mut checked = 0;
        for line in csv.lines() {
            if line.starts_with("table,") {
                in_divisibility = line == "table,divisibility_summary";
                continue;
            }
            if !in_divisibility || line.starts_with("type,") || line.is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            let (name, pct_cell) = (cells[0], cells[3]);
            let reparsed: f64 = pct_cell.parse().unwrap();
            let stored = match name {
                "enumeration" => report.divisibility_summary.enumeration.pct.unwrap(),
                "composite" => report.divisibility_summary.composite.pct.unwrap(),
                "unique_union" => report.divisibility_summary.unique_union.pct.unwrap(),
                _ => continue,
            };
            assert!(
                (reparsed - stored).abs() <= 0.005,
                "{name}: {reparsed} vs {stored}"
            );
            checked += 1;
        }
        assert_eq!(checked, 3);
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!(ReportFormat::parse("yaml").is_err());
    }
}

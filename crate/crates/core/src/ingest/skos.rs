use std::collections::BTreeMap;
use std::io::BufReader;

use rio_api::model::{Literal, Subject, Term, Triple};
use rio_api::parser::{ParseError, TriplesParser};
use rio_turtle::{NTriplesParser, TurtleError, TurtleParser};

use crate::diag::Diagnostic;
use crate::entry::{lang_matches, ConceptEntry, CorpusSource, FormatHint};
use crate::error::{Error, Result};
use crate::ingest::LoadOutcome;

/// Harvest language-tagged label literals from a Turtle or N-Triples file.
/// One entry per (concept IRI, matching label), deterministically ordered by
/// IRI then label. Concepts with several harvested labels get "#n"-suffixed
/// entry ids.
pub fn load_skos(source: &CorpusSource, lang: &str) -> Result<LoadOutcome> {
    let file = std::fs::File::open(&source.path).map_err(|e| Error::io(&source.path, e))?;
    let reader = BufReader::new(file);

    // (concept IRI -> labels in harvest order), keyed for deterministic output
    let mut harvested: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut skipped_blank_subjects = 0usize;

    let mut on_triple = |t: Triple<'_>| -> std::result::Result<(), TurtleError> {
        if !source
            .label_properties
            .iter()
            .any(|p| p.as_str() == t.predicate.iri)
        {
            return Ok(());
        }
        let Term::Literal(Literal::LanguageTaggedString { value, language }) = t.object else {
            return Ok(());
        };
        if !lang_matches(language, lang) {
            return Ok(());
        }
        match t.subject {
            Subject::NamedNode(node) => {
                harvested
                    .entry(node.iri.to_string())
                    .or_default()
                    .push(value.to_string());
            }
            _ => skipped_blank_subjects += 1,
        }
        Ok(())
    };

    let parse_result = match source.format_hint {
        FormatHint::Turtle => TurtleParser::new(reader, None).parse_all(&mut on_triple),
        FormatHint::NTriples => NTriplesParser::new(reader).parse_all(&mut on_triple),
        other => {
            return Err(Error::Config(format!(
                "format hint {other:?} is not an RDF serialization"
            )))
        }
    };
    if let Err(e) = parse_result {
        let position = e.textual_position();
        return Err(Error::RdfSyntax {
            path: source.path.clone(),
            line: position.map_or(0, |p| p.line_number()),
            column: position.map_or(0, |p| p.byte_number()),
            message: e.to_string(),
        });
    }

    let corpus_id = source.default_corpus_id();
    let mut outcome = LoadOutcome::default();
    for (iri, mut labels) in harvested {
        labels.sort();
        let multiple = labels.len() > 1;
        for (i, label) in labels.into_iter().enumerate() {
            if label.trim().is_empty() {
                outcome.diagnostics.push(Diagnostic::warning(
                    "entry-dropped",
                    format!("{iri}: empty label literal skipped"),
                ));
                continue;
            }
            let entry_id = if multiple {
                format!("{iri}#{}", i + 1)
            } else {
                iri.clone()
            };
            outcome.entries.push(ConceptEntry::new(
                entry_id,
                label,
                lang.to_lowercase(),
                corpus_id.clone(),
            ));
        }
    }
    if skipped_blank_subjects > 0 {
        outcome.diagnostics.push(Diagnostic::info(
            "blank-subject",
            format!("{skipped_blank_subjects} label(s) on blank nodes ignored"),
        ));
    }
    if outcome.entries.is_empty() {
        outcome.diagnostics.push(Diagnostic::warning(
            "no-matching-labels",
            format!(
                "{}: no {:?}-tagged labels for the configured properties",
                source.path.display(),
                lang
            ),
        ));
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entry::{SKOS_ALT_LABEL, SKOS_PREF_LABEL};
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    const THREE_TRIPLES: &str = r#"
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix ex: <http://example.org/> .
ex:c224 a skos:Concept ;
    skos:prefLabel "χάρτης εκπαιδευτικών ιδρυμάτων"@el .
"#;

    #[test]
    fn harvests_matching_preflabel() {
        let f = write_tmp(THREE_TRIPLES);
        let source = CorpusSource::new(f.path(), FormatHint::Turtle);
        let out = load_skos(&source, "el").unwrap();
        assert_eq!(out.entries.len(), 1);
        assert_eq!(out.entries[0].raw_label, "χάρτης εκπαιδευτικών ιδρυμάτων");
        assert_eq!(out.entries[0].entry_id, "http://example.org/c224");
    }

    #[test]
    fn non_matching_language_yields_empty_list_plus_warning() {
        let f = write_tmp(THREE_TRIPLES);
        let source = CorpusSource::new(f.path(), FormatHint::Turtle);
        let out = load_skos(&source, "fr").unwrap();
        assert!(out.entries.is_empty());
        assert!(out.diagnostics.iter().any(|d| d.code == "no-matching-labels"));
    }

    #[test]
    fn altlabel_excluded_by_default_policy() {
        let f = write_tmp(
            r#"
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
<http://example.org/c1> skos:prefLabel "κύριος όρος"@el ;
    skos:altLabel "εναλλακτικός όρος"@el .
"#,
        );
        let source = CorpusSource::new(f.path(), FormatHint::Turtle);
        let out = load_skos(&source, "el").unwrap();
        assert_eq!(out.entries.len(), 1);
        assert_eq!(out.entries[0].raw_label, "κύριος όρος");

        // opting in harvests both and suffixes ids
        let source = CorpusSource::new(f.path(), FormatHint::Turtle).with_label_properties(vec![
            SKOS_PREF_LABEL.to_string(),
            SKOS_ALT_LABEL.to_string(),
        ]);
        let out = load_skos(&source, "el").unwrap();
        assert_eq!(out.entries.len(), 2);
        assert!(out.entries.iter().all(|e| e.entry_id.contains('#')));
    }

    #[test]
    fn primary_subtag_matching_harvests_regional_tags() {
        let f = write_tmp(
            r#"<http://example.org/c1> <http://www.w3.org/2004/02/skos/core#prefLabel> "όρος"@el-GR .
"#,
        );
        let source = CorpusSource::new(f.path(), FormatHint::NTriples);
        let out = load_skos(&source, "el").unwrap();
        assert_eq!(out.entries.len(), 1);
    }

    #[test]
    fn turtle_and_ntriples_of_same_graph_agree() {
        let ttl = write_tmp(
            r#"
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
<http://example.org/b> skos:prefLabel "beta"@en .
<http://example.org/a> skos:prefLabel "alpha"@en .
"#,
        );
        let nt = write_tmp(
            r#"<http://example.org/a> <http://www.w3.org/2004/02/skos/core#prefLabel> "alpha"@en .
<http://example.org/b> <http://www.w3.org/2004/02/skos/core#prefLabel> "beta"@en .
"#,
        );
        let out_ttl = load_skos(&CorpusSource::new(ttl.path(), FormatHint::Turtle), "en").unwrap();
        let out_nt = load_skos(&CorpusSource::new(nt.path(), FormatHint::NTriples), "en").unwrap();
        let labels = |o: &LoadOutcome| -> Vec<(String, String)> {
            o.entries
                .iter()
                .map(|e| (e.entry_id.clone(), e.raw_label.clone()))
                .collect()
        };
        assert_eq!(labels(&out_ttl), labels(&out_nt));
        // deterministic ordering: sorted by IRI
        assert!(out_ttl.entries[0].entry_id < out_ttl.entries[1].entry_id);
    }

    #[test]
    fn syntax_error_reports_position() {
        let f = write_tmp("@prefix broken");
        let source = CorpusSource::new(f.path(), FormatHint::Turtle);
        match load_skos(&source, "el") {
            Err(Error::RdfSyntax { line, .. }) => assert!(line >= 1),
            other => panic!("expected RdfSyntax error, got {other:?}"),
        }
    }
}

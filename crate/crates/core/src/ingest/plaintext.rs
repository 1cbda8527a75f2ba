use crate::diag::Diagnostic;
use crate::entry::{ConceptEntry, CorpusSource};
use crate::error::{Error, Result};
use crate::ingest::LoadOutcome;

/// One entry per non-blank line, order preserved, trailing whitespace
/// stripped. Entry ids are "corpus_id:lineno" (1-based).
pub fn load_plaintext(source: &CorpusSource, lang: &str, corpus_id: &str) -> Result<LoadOutcome> {
    let bytes = std::fs::read(&source.path).map_err(|e| Error::io(&source.path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Encoding {
        path: source.path.clone(),
    })?;

    let mut outcome = LoadOutcome::default();
    for (i, line) in text.lines().enumerate() {
        let label = line.trim_end();
        if label.trim().is_empty() {
            continue;
        }
        outcome.entries.push(ConceptEntry::new(
            format!("{corpus_id}:{}", i + 1),
            label,
            lang,
            corpus_id,
        ));
    }
    if outcome.entries.is_empty() {
        outcome.diagnostics.push(Diagnostic::warning(
            "empty-corpus",
            format!("{}: no entries found", source.path.display()),
        ));
    }
    Ok(outcome)
}

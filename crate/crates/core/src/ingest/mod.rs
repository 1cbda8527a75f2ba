//! Corpus loaders: SKOS RDF files (Turtle, N-Triples), plaintext entry
//! lists, and pre-tagged tagger-output documents. All loaders are pure
//! functions of the file bytes and yield a uniform entry stream.

mod plaintext;
mod pretagged;
mod skos;

pub use plaintext::load_plaintext;
pub use pretagged::load_pretagged;
pub use skos::load_skos;

use crate::diag::Diagnostic;
use crate::entry::{ConceptEntry, CorpusSource, SourceKind};
use crate::error::Result;
use crate::morphotag::TagsetMapping;

/// Entries plus the non-fatal findings gathered while loading them.
#[derive(Debug, Default)]
pub struct LoadOutcome {
    pub entries: Vec<ConceptEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Dispatch on the source kind. `lang` selects labels for SKOS sources and
/// annotates plaintext entries; pre-tagged documents carry their own.
pub fn load(
    source: &CorpusSource,
    lang: &str,
    corpus_id: &str,
    mapping: &TagsetMapping,
) -> Result<LoadOutcome> {
    source.validate()?;
    match source.kind {
        SourceKind::SkosRdf => load_skos(source, lang),
        SourceKind::Plaintext => load_plaintext(source, lang, corpus_id),
        SourceKind::Pretagged => load_pretagged(source, mapping),
    }
}

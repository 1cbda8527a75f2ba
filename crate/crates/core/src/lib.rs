//! Morphosyntactic atomicity analysis for knowledge organization system
//! vocabularies: load SKOS concept labels, tag them, derive their coarse
//! syntactic patterns, classify each as an indivisible atomic concept or a
//! divisible multi-concept term, aggregate the statistics, and propose
//! decompositions for the divisible ones.

pub mod classify;
pub mod diag;
pub mod entry;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod morphotag;
pub mod numfmt;
pub mod pipeline;
pub mod suggest;
pub mod tokenize;

#[cfg(test)]
mod testutil;

pub use diag::{Diagnostic, Severity};
pub use entry::{ConceptEntry, CorpusSource, FormatHint, SourceKind, Token, TokenKind};
pub use error::{Error, Result};

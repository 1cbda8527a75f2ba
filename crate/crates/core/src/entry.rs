use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphotag::MorphoTag;

/// One label of one KOS concept: the unit of analysis. For SKOS sources a
/// concept carrying several harvested labels yields several entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptEntry {
    /// Concept URI, or a synthetic "corpus:lineno" id for line-based sources.
    pub entry_id: String,
    pub raw_label: String,
    /// BCP-47-ish language tag; matching elsewhere compares primary subtags.
    pub lang: String,
    pub corpus_id: String,
    /// Empty until tokenization.
    pub tokens: Vec<Token>,
}

impl ConceptEntry {
    pub fn new(
        entry_id: impl Into<String>,
        raw_label: impl Into<String>,
        lang: impl Into<String>,
        corpus_id: impl Into<String>,
    ) -> Self {
        ConceptEntry {
            entry_id: entry_id.into(),
            raw_label: raw_label.into(),
            lang: lang.into(),
            corpus_id: corpus_id.into(),
            tokens: Vec::new(),
        }
    }

    /// Number of tokens of kind `Word` (the "words" of the entry).
    pub fn word_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.kind == TokenKind::Word)
            .count()
    }

    pub fn is_tagged(&self) -> bool {
        !self.tokens.is_empty() && self.tokens.iter().all(|t| t.tag.is_some())
    }
}

/// A single significant unit of an entry: a word, a digit group, or a
/// punctuation mark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    pub tag: Option<MorphoTag>,
    pub lemma: Option<String>,
    /// 0-based position within the entry.
    pub index: usize,
    /// Whitespace between the previous token and this one (leading
    /// whitespace of the label for the first token). Concatenating
    /// `gap_before + surface` over all tokens reconstructs the label.
    pub gap_before: String,
}

impl Token {
    pub fn new(surface: impl Into<String>, kind: TokenKind, index: usize) -> Self {
        Token {
            surface: surface.into(),
            kind,
            tag: None,
            lemma: None,
            index,
            gap_before: String::new(),
        }
    }

    /// Lemma when known, surface otherwise. Marker lexicons match on this.
    pub fn lemma_or_surface(&self) -> &str {
        self.lemma.as_deref().unwrap_or(&self.surface)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Digit,
    Punct,
    Symbol,
}

/// Where and how to load a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSource {
    pub kind: SourceKind,
    pub path: PathBuf,
    pub format_hint: FormatHint,
    /// SKOS label property IRIs to harvest, in order. Defaults to prefLabel.
    pub label_properties: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    SkosRdf,
    Plaintext,
    Pretagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatHint {
    Turtle,
    NTriples,
    Lines,
    TaggedXml,
    TokenTsv,
}

impl FormatHint {
    /// The source kind each format belongs to.
    pub fn kind(self) -> SourceKind {
        match self {
            FormatHint::Turtle | FormatHint::NTriples => SourceKind::SkosRdf,
            FormatHint::Lines => SourceKind::Plaintext,
            FormatHint::TaggedXml | FormatHint::TokenTsv => SourceKind::Pretagged,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "turtle" => Ok(FormatHint::Turtle),
            "ntriples" => Ok(FormatHint::NTriples),
            "lines" => Ok(FormatHint::Lines),
            "tagged-xml" => Ok(FormatHint::TaggedXml),
            "token-tsv" => Ok(FormatHint::TokenTsv),
            other => Err(Error::Config(format!("unknown input format {other:?}"))),
        }
    }
}

pub const SKOS_PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
pub const SKOS_HIDDEN_LABEL: &str = "http://www.w3.org/2004/02/skos/core#hiddenLabel";

impl CorpusSource {
    pub fn new(path: impl Into<PathBuf>, format_hint: FormatHint) -> Self {
        CorpusSource {
            kind: format_hint.kind(),
            path: path.into(),
            format_hint,
            label_properties: vec![SKOS_PREF_LABEL.to_string()],
        }
    }

    pub fn with_label_properties(mut self, props: Vec<String>) -> Self {
        self.label_properties = props;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_hint.kind() != self.kind {
            return Err(Error::Config(format!(
                "format hint {:?} is not compatible with source kind {:?}",
                self.format_hint, self.kind
            )));
        }
        if self.label_properties.is_empty() {
            return Err(Error::Config(
                "label_properties must name at least one property".into(),
            ));
        }
        Ok(())
    }

    /// Corpus id derived from the file name, used when no explicit id is given.
    pub fn default_corpus_id(&self) -> String {
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "corpus".to_string())
    }
}

/// True for a syntactically valid language tag: lowercase primary subtag of
/// 2–3 letters, optionally followed by "-" subtags.
pub fn is_valid_lang_tag(tag: &str) -> bool {
    let primary = tag.split('-').next().unwrap_or("");
    (2..=3).contains(&primary.len()) && primary.chars().all(|c| c.is_ascii_lowercase())
}

/// Language matching compares primary subtags only: "el" matches "el-GR".
pub fn lang_matches(entry_tag: &str, wanted: &str) -> bool {
    let primary = |t: &str| {
        t.split('-')
            .next()
            .unwrap_or("")
            .to_ascii_lowercase()
    };
    primary(entry_tag) == primary(wanted)
}

//! Morphosyntactic tag model: part-of-speech categories with their
//! feature bundles, the positional tag-string codec, and a deterministic
//! lexicon-based fallback tagger.

mod codec;
mod lexicon;

pub use codec::TagsetMapping;
pub use lexicon::{ContextRule, Lexicon, LexiconTagger};

use serde::{Deserialize, Serialize};

use crate::entry::TokenKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosCategory {
    Noun,
    Adjective,
    Article,
    Pronoun,
    Verb,
    Numeral,
    Adverb,
    Adposition,
    Conjunction,
    Particle,
    Residual,
    Abbreviation,
    Punctuation,
    Digit,
}

pub const ALL_CATEGORIES: [PosCategory; 14] = [
    PosCategory::Noun,
    PosCategory::Adjective,
    PosCategory::Article,
    PosCategory::Pronoun,
    PosCategory::Verb,
    PosCategory::Numeral,
    PosCategory::Adverb,
    PosCategory::Adposition,
    PosCategory::Conjunction,
    PosCategory::Particle,
    PosCategory::Residual,
    PosCategory::Abbreviation,
    PosCategory::Punctuation,
    PosCategory::Digit,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordClass {
    Open,
    Closed,
    NotApplicable,
}

impl PosCategory {
    /// Open vs closed word class. Fixed per category.
    pub fn word_class(self) -> WordClass {
        use PosCategory::*;
        match self {
            Noun | Adjective | Verb | Numeral | Adverb | Residual | Abbreviation => {
                WordClass::Open
            }
            Article | Pronoun | Adposition | Conjunction | Particle => WordClass::Closed,
            Punctuation | Digit => WordClass::NotApplicable,
        }
    }

    /// Whether members of the category take inflectional forms.
    pub fn inflected(self) -> bool {
        use PosCategory::*;
        matches!(self, Noun | Adjective | Article | Pronoun | Verb | Numeral)
    }

    pub fn name(self) -> &'static str {
        use PosCategory::*;
        match self {
            Noun => "Noun",
            Adjective => "Adjective",
            Article => "Article",
            Pronoun => "Pronoun",
            Verb => "Verb",
            Numeral => "Numeral",
            Adverb => "Adverb",
            Adposition => "Adposition",
            Conjunction => "Conjunction",
            Particle => "Particle",
            Residual => "Residual",
            Abbreviation => "Abbreviation",
            Punctuation => "Punctuation",
            Digit => "Digit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gender {
    Masc,
    Fem,
    Neut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Number {
    Sg,
    Pl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    Nom,
    Gen,
    Acc,
    Voc,
    Dat,
}

impl Case {
    pub fn parse_code(code: &str) -> Option<Case> {
        match code {
            "Nm" => Some(Case::Nom),
            "Ge" => Some(Case::Gen),
            "Ac" => Some(Case::Acc),
            "Vo" => Some(Case::Voc),
            "Da" => Some(Case::Dat),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    Basic,
    Comparative,
    Superlative,
}

impl Degree {
    pub fn label(self) -> &'static str {
        match self {
            Degree::Basic => "Basic",
            Degree::Comparative => "Comparative",
            Degree::Superlative => "Superlative",
        }
    }
}

/// Decoded morphosyntactic feature bundle for one token.
///
/// `word_class` and `inflected` are functions of the category and are exposed
/// as methods rather than stored. Inflectional features (gender, number,
/// case) may only be present on inflected categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphoTag {
    pub category: PosCategory,
    /// Category-specific subtype label, e.g. "Common" for nouns,
    /// "Coordinative" for conjunctions. Absent where the tagset defines none.
    pub subtype: Option<String>,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
    pub case: Option<Case>,
    pub degree: Option<Degree>,
}

impl MorphoTag {
    pub fn of(category: PosCategory) -> Self {
        MorphoTag {
            category,
            subtype: None,
            gender: None,
            number: None,
            case: None,
            degree: None,
        }
    }

    pub fn with_subtype(mut self, subtype: &str) -> Self {
        self.subtype = Some(subtype.to_string());
        self
    }

    pub fn word_class(&self) -> WordClass {
        self.category.word_class()
    }

    pub fn inflected(&self) -> bool {
        self.category.inflected()
    }

    /// The label used for per-subtype accounting: the subtype when present,
    /// the degree for adjectives tagged by degree only.
    pub fn pos_type_label(&self) -> Option<&str> {
        self.subtype
            .as_deref()
            .or_else(|| self.degree.map(Degree::label))
    }

    /// The invariant the codec and loaders must maintain: inflectional
    /// features only on inflected categories.
    pub fn validate(&self) -> Result<(), String> {
        if !self.category.inflected()
            && (self.gender.is_some() || self.number.is_some() || self.case.is_some())
        {
            return Err(format!(
                "{} is invariable but carries inflectional features",
                self.category.name()
            ));
        }
        Ok(())
    }
}

/// Coarse part-of-speech label used in syntactic patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoarseLabel {
    N,
    Adj,
    Art,
    Pn,
    V,
    Num,
    Advb,
    Adp,
    Conj,
    Pt,
    Res,
    Abbr,
    Punct(PunctClass),
    Dig,
}

/// Punctuation distinctions that matter for rule matching. Everything that
/// is neither a comma nor a parenthesis collapses to `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PunctClass {
    Comma,
    OpenParen,
    CloseParen,
    Other,
}

impl CoarseLabel {
    /// Name as it appears in canonical pattern strings; all punctuation
    /// renders as "Punct".
    pub fn name(self) -> &'static str {
        use CoarseLabel::*;
        match self {
            N => "N",
            Adj => "Adj",
            Art => "Art",
            Pn => "Pn",
            V => "V",
            Num => "Num",
            Advb => "Advb",
            Adp => "Adp",
            Conj => "Conj",
            Pt => "Pt",
            Res => "Res",
            Abbr => "Abbr",
            Punct(_) => "Punct",
            Dig => "Dig",
        }
    }

    pub fn punct_class(self) -> Option<PunctClass> {
        match self {
            CoarseLabel::Punct(c) => Some(c),
            _ => None,
        }
    }
}

/// Project a full tag onto its coarse pattern label.
pub fn coarse(tag: &MorphoTag) -> CoarseLabel {
    use PosCategory::*;
    match tag.category {
        Noun => CoarseLabel::N,
        Adjective => CoarseLabel::Adj,
        Article => CoarseLabel::Art,
        Pronoun => CoarseLabel::Pn,
        Verb => CoarseLabel::V,
        Numeral => CoarseLabel::Num,
        Adverb => CoarseLabel::Advb,
        Adposition => CoarseLabel::Adp,
        Conjunction => CoarseLabel::Conj,
        Particle => CoarseLabel::Pt,
        Residual => CoarseLabel::Res,
        Abbreviation => CoarseLabel::Abbr,
        Digit => CoarseLabel::Dig,
        Punctuation => CoarseLabel::Punct(match tag.subtype.as_deref() {
            Some("Comma") => PunctClass::Comma,
            Some("OpenParen") => PunctClass::OpenParen,
            Some("CloseParen") => PunctClass::CloseParen,
            _ => PunctClass::Other,
        }),
    }
}

/// Punctuation subtype for a single punctuation character.
pub fn punct_subtype(surface: &str) -> &'static str {
    match surface {
        "," => "Comma",
        "." | "·" | ";" | "!" | "?" | "…" => "Terminal",
        "(" | "[" => "OpenParen",
        ")" | "]" => "CloseParen",
        _ => "Other",
    }
}

/// Synthetic tag for tokens the lexicon never sees: digits, punctuation
/// marks, stray symbols.
pub fn synthetic_tag(kind: TokenKind, surface: &str) -> Option<MorphoTag> {
    match kind {
        TokenKind::Digit => Some(MorphoTag::of(PosCategory::Digit)),
        TokenKind::Punct => {
            Some(MorphoTag::of(PosCategory::Punctuation).with_subtype(punct_subtype(surface)))
        }
        TokenKind::Symbol => Some(MorphoTag::of(PosCategory::Residual).with_subtype("Symbol")),
        TokenKind::Word => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Word-class and inflection assignments for all fourteen categories.
    #[test]
    fn category_word_class_and_inflection_table() {
        use PosCategory::*;
        let expected = [
            (Noun, WordClass::Open, true),
            (Adjective, WordClass::Open, true),
            (Article, WordClass::Closed, true),
            (Pronoun, WordClass::Closed, true),
            (Verb, WordClass::Open, true),
            (Numeral, WordClass::Open, true),
            (Adverb, WordClass::Open, false),
            (Adposition, WordClass::Closed, false),
            (Conjunction, WordClass::Closed, false),
            (Particle, WordClass::Closed, false),
            (Residual, WordClass::Open, false),
            (Abbreviation, WordClass::Open, false),
            (Punctuation, WordClass::NotApplicable, false),
            (Digit, WordClass::NotApplicable, false),
        ];
        assert_eq!(expected.len(), ALL_CATEGORIES.len());
        for (cat, class, inflected) in expected {
            assert_eq!(cat.word_class(), class, "{}", cat.name());
            assert_eq!(cat.inflected(), inflected, "{}", cat.name());
        }
    }

    #[test]
    fn coarse_projection() {
        assert_eq!(
            coarse(&MorphoTag::of(PosCategory::Noun).with_subtype("Common")),
            CoarseLabel::N
        );
        assert_eq!(
            coarse(&MorphoTag::of(PosCategory::Residual).with_subtype("ForeignWord")),
            CoarseLabel::Res
        );
        assert_eq!(coarse(&MorphoTag::of(PosCategory::Digit)), CoarseLabel::Dig);
        assert_eq!(
            coarse(&MorphoTag::of(PosCategory::Punctuation).with_subtype("Comma")),
            CoarseLabel::Punct(PunctClass::Comma)
        );
        assert_eq!(
            coarse(&MorphoTag::of(PosCategory::Punctuation).with_subtype("Terminal")),
            CoarseLabel::Punct(PunctClass::Other)
        );
    }

    #[test]
    fn invariable_category_rejects_inflection() {
        let mut tag = MorphoTag::of(PosCategory::Adposition).with_subtype("Simple");
        assert!(tag.validate().is_ok());
        tag.case = Some(Case::Gen);
        assert!(tag.validate().is_err());
    }
}

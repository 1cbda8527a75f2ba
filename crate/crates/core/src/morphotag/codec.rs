//! Positional tag-string codec.
//!
//! Tag strings are a category prefix (two characters) followed by two-character
//! feature codes read positionally, e.g. "NoCmMaSgNm" = Noun, Common,
//! Masculine, Singular, Nominative. The decode table ships as a data file so
//! other tagsets can be plugged in; see docs/formats.md for the grammar.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::diag::Diagnostic;
use crate::error::{Error, Result};
use crate::morphotag::{Case, Degree, Gender, MorphoTag, Number, PosCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FieldKind {
    Subtype,
    Degree,
    Gender,
    Number,
    Case,
}

impl FieldKind {
    fn name(self) -> &'static str {
        match self {
            FieldKind::Subtype => "subtype",
            FieldKind::Degree => "degree",
            FieldKind::Gender => "gender",
            FieldKind::Number => "number",
            FieldKind::Case => "case",
        }
    }
}

#[derive(Debug, Clone)]
struct FieldSpec {
    kind: FieldKind,
    /// code -> label. For gender/number/case/degree the labels are the fixed
    /// feature names; for subtype they are the category's subtype vocabulary.
    codes: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
struct CategoryLayout {
    prefix: String,
    category: PosCategory,
    fields: Vec<FieldSpec>,
}

/// Positional decode table: category prefix -> category + field layout.
#[derive(Debug, Clone)]
pub struct TagsetMapping {
    layouts: Vec<CategoryLayout>,
}

const TAGSET_EL: &str = include_str!("../../data/tagset-el.tsv");

fn default_codes(kind: FieldKind) -> BTreeMap<String, String> {
    let pairs: &[(&str, &str)] = match kind {
        FieldKind::Gender => &[("Ma", "Masc"), ("Fe", "Fem"), ("Ne", "Neut")],
        FieldKind::Number => &[("Sg", "Sg"), ("Pl", "Pl")],
        FieldKind::Case => &[
            ("Nm", "Nom"),
            ("Ge", "Gen"),
            ("Ac", "Acc"),
            ("Vo", "Voc"),
            ("Da", "Dat"),
        ],
        FieldKind::Degree => &[("Ba", "Basic"), ("Cp", "Comparative"), ("Su", "Superlative")],
        FieldKind::Subtype => &[],
    };
    pairs
        .iter()
        .map(|(c, l)| (c.to_string(), l.to_string()))
        .collect()
}

fn parse_category(name: &str) -> Option<PosCategory> {
    use PosCategory::*;
    Some(match name {
        "Noun" => Noun,
        "Adjective" => Adjective,
        "Article" => Article,
        "Pronoun" => Pronoun,
        "Verb" => Verb,
        "Numeral" => Numeral,
        "Adverb" => Adverb,
        "Adposition" => Adposition,
        "Conjunction" => Conjunction,
        "Particle" => Particle,
        "Residual" => Residual,
        "Abbreviation" => Abbreviation,
        "Punctuation" => Punctuation,
        "Digit" => Digit,
        _ => return None,
    })
}

impl TagsetMapping {
    /// The mapping shipped with the crate (Greek positional tagset).
    pub fn builtin() -> Self {
        TagsetMapping::from_str_named(TAGSET_EL, "<builtin tagset>")
            .expect("builtin tagset mapping must parse")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TagsetMapping::from_str_named(&text, &path.to_string_lossy())
    }

    pub fn from_str_named(text: &str, origin: &str) -> Result<Self> {
        let mut layouts: Vec<CategoryLayout> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let err = |message: String| Error::DataFile {
                what: "tagset mapping",
                path: origin.into(),
                line: lineno + 1,
                message,
            };
            let prefix = cols.next().unwrap_or("").trim();
            let category_name = cols.next().unwrap_or("").trim();
            let layout_spec = cols.next().unwrap_or("").trim();

            if prefix.chars().count() != 2 {
                return Err(err(format!("prefix {prefix:?} must be two characters")));
            }
            if layouts.iter().any(|l| l.prefix == prefix) {
                return Err(err(format!("duplicate prefix {prefix:?}")));
            }
            let category = parse_category(category_name)
                .ok_or_else(|| err(format!("unknown category {category_name:?}")))?;

            let mut fields = Vec::new();
            if !layout_spec.is_empty() {
                for field in layout_spec.split(',') {
                    fields.push(parse_field(field.trim(), category).map_err(err)?);
                }
            }
            layouts.push(CategoryLayout {
                prefix: prefix.to_string(),
                category,
                fields,
            });
        }
        if layouts.is_empty() {
            return Err(Error::DataFile {
                what: "tagset mapping",
                path: origin.into(),
                line: 0,
                message: "no category layouts defined".into(),
            });
        }
        Ok(TagsetMapping { layouts })
    }

    /// All category prefixes the mapping accepts, in file order.
    pub fn prefixes(&self) -> impl Iterator<Item = &str> {
        self.layouts.iter().map(|l| l.prefix.as_str())
    }

    /// Decode a positional tag string. Unknown feature codes within a known
    /// category leave the feature absent and push a diagnostic; an unknown
    /// category prefix is an error.
    pub fn decode_tag(&self, tag_string: &str, diags: &mut Vec<Diagnostic>) -> Result<MorphoTag> {
        let chars: Vec<char> = tag_string.chars().collect();
        if chars.len() < 2 {
            return Err(Error::UnknownTagPrefix {
                tag: tag_string.to_string(),
            });
        }
        let prefix: String = chars[0..2].iter().collect();
        let layout = self
            .layouts
            .iter()
            .find(|l| l.prefix == prefix)
            .ok_or_else(|| Error::UnknownTagPrefix {
                tag: tag_string.to_string(),
            })?;

        let mut tag = MorphoTag::of(layout.category);
        let mut pos = 2;
        for field in &layout.fields {
            if pos >= chars.len() {
                break;
            }
            if pos + 2 > chars.len() {
                diags.push(Diagnostic::warning(
                    "tag-decode",
                    format!("tag {tag_string:?}: dangling character at end, ignored"),
                ));
                pos = chars.len();
                break;
            }
            let code: String = chars[pos..pos + 2].iter().collect();
            pos += 2;
            match field.codes.get(&code) {
                Some(label) => apply_field(&mut tag, field.kind, label),
                None => diags.push(Diagnostic::warning(
                    "tag-decode",
                    format!(
                        "tag {tag_string:?}: unknown {} code {code:?}, feature left absent",
                        field.kind.name()
                    ),
                )),
            }
        }
        if pos < chars.len() {
            diags.push(Diagnostic::warning(
                "tag-decode",
                format!(
                    "tag {tag_string:?}: {} trailing character(s) beyond the {} layout, ignored",
                    chars.len() - pos,
                    layout.category.name()
                ),
            ));
        }
        Ok(tag)
    }

    /// Inverse of [`decode_tag`](Self::decode_tag):
    /// `decode_tag(encode_tag(t))` is the identity for every tag the mapping
    /// can produce.
    pub fn encode_tag(&self, tag: &MorphoTag) -> Result<String> {
        tag.validate().map_err(|reason| Error::UnencodableTag { reason })?;
        let layout = self
            .layouts
            .iter()
            .find(|l| l.category == tag.category)
            .ok_or_else(|| Error::UnencodableTag {
                reason: format!("category {} has no prefix in the mapping", tag.category.name()),
            })?;

        let mut out = layout.prefix.clone();
        let mut stopped = false;
        for field in &layout.fields {
            let label = field_label(tag, field.kind);
            match label {
                None => stopped = true,
                Some(label) => {
                    if stopped {
                        return Err(Error::UnencodableTag {
                            reason: format!(
                                "{} set but an earlier positional field is absent",
                                field.kind.name()
                            ),
                        });
                    }
                    let code = field
                        .codes
                        .iter()
                        .find(|(_, l)| l.as_str() == label)
                        .map(|(c, _)| c.clone())
                        .ok_or_else(|| Error::UnencodableTag {
                            reason: format!(
                                "no code for {} value {label:?} in category {}",
                                field.kind.name(),
                                tag.category.name()
                            ),
                        })?;
                    let _ = write!(out, "{code}");
                }
            }
        }
        Ok(out)
    }

    /// True when the mapping decodes `tag_string` cleanly (no diagnostics).
    /// This is the language over which the encode/decode round trip is the
    /// identity.
    pub fn accepts(&self, tag_string: &str) -> bool {
        let mut diags = Vec::new();
        self.decode_tag(tag_string, &mut diags).is_ok() && diags.is_empty()
    }
}

fn parse_field(spec: &str, category: PosCategory) -> std::result::Result<FieldSpec, String> {
    let (name, table) = match spec.find('(') {
        Some(open) => {
            let close = spec
                .rfind(')')
                .ok_or_else(|| format!("unclosed code table in field {spec:?}"))?;
            (&spec[..open], Some(&spec[open + 1..close]))
        }
        None => (spec, None),
    };
    let kind = match name {
        "subtype" => FieldKind::Subtype,
        "degree" => FieldKind::Degree,
        "gender" => FieldKind::Gender,
        "number" => FieldKind::Number,
        "case" => FieldKind::Case,
        other => return Err(format!("unknown field {other:?}")),
    };
    if matches!(kind, FieldKind::Gender | FieldKind::Number | FieldKind::Case)
        && !category.inflected()
    {
        return Err(format!(
            "{} is invariable and cannot carry a {} field",
            category.name(),
            kind.name()
        ));
    }
    let codes = match table {
        Some(table) => {
            let mut codes = BTreeMap::new();
            for pair in table.split(';') {
                let (code, label) = pair
                    .split_once('=')
                    .ok_or_else(|| format!("bad code entry {pair:?} (expected code=Label)"))?;
                if code.chars().count() != 2 {
                    return Err(format!("code {code:?} must be two characters"));
                }
                if codes.insert(code.to_string(), label.to_string()).is_some() {
                    return Err(format!("duplicate code {code:?}"));
                }
            }
            codes
        }
        None => {
            if kind == FieldKind::Subtype {
                return Err("subtype field requires an explicit code table".into());
            }
            default_codes(kind)
        }
    };
    Ok(FieldSpec { kind, codes })
}

fn apply_field(tag: &mut MorphoTag, kind: FieldKind, label: &str) {
    match kind {
        FieldKind::Subtype => tag.subtype = Some(label.to_string()),
        FieldKind::Degree => {
            tag.degree = match label {
                "Basic" => Some(Degree::Basic),
                "Comparative" => Some(Degree::Comparative),
                "Superlative" => Some(Degree::Superlative),
                _ => None,
            }
        }
        FieldKind::Gender => {
            tag.gender = match label {
                "Masc" => Some(Gender::Masc),
                "Fem" => Some(Gender::Fem),
                "Neut" => Some(Gender::Neut),
                _ => None,
            }
        }
        FieldKind::Number => {
            tag.number = match label {
                "Sg" => Some(Number::Sg),
                "Pl" => Some(Number::Pl),
                _ => None,
            }
        }
        FieldKind::Case => {
            tag.case = match label {
                "Nom" => Some(Case::Nom),
                "Gen" => Some(Case::Gen),
                "Acc" => Some(Case::Acc),
                "Voc" => Some(Case::Voc),
                "Dat" => Some(Case::Dat),
                _ => None,
            }
        }
    }
}

fn field_label(tag: &MorphoTag, kind: FieldKind) -> Option<&str> {
    match kind {
        FieldKind::Subtype => tag.subtype.as_deref(),
        FieldKind::Degree => tag.degree.map(Degree::label),
        FieldKind::Gender => tag.gender.map(|g| match g {
            Gender::Masc => "Masc",
            Gender::Fem => "Fem",
            Gender::Neut => "Neut",
        }),
        FieldKind::Number => tag.number.map(|n| match n {
            Number::Sg => "Sg",
            Number::Pl => "Pl",
        }),
        FieldKind::Case => tag.case.map(|c| match c {
            Case::Nom => "Nom",
            Case::Gen => "Gen",
            Case::Acc => "Acc",
            Case::Voc => "Voc",
            Case::Dat => "Dat",
        }),
    }
}

//! Rule set: ordered indivisibility rules (coarse-pattern templates plus
//! case predicates) and the divisibility-marker lexicons. Ships as a data
//! file; the grammar is documented in docs/formats.md.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::entry::Token;
use crate::error::{Error, Result};
use crate::morphotag::{coarse, Case, PunctClass};

const RULES_EL: &str = include_str!("../../data/rules-el.rules");

/// One atom of a pattern template: a coarse label name, optionally narrowed
/// to a punctuation class ("Punct:comma").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternAtom {
    pub label: String,
    pub punct: Option<PunctClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTemplate {
    pub atoms: Vec<PatternAtom>,
}

impl PatternTemplate {
    pub fn parse(spec: &str) -> std::result::Result<Self, String> {
        let mut atoms = Vec::new();
        for part in spec.split('+') {
            let part = part.trim();
            let (label, punct) = match part.split_once(':') {
                None => (part.to_string(), None),
                Some((label, class)) => {
                    if label != "Punct" {
                        return Err(format!("only Punct takes a class, got {part:?}"));
                    }
                    let class = match class {
                        "comma" => PunctClass::Comma,
                        "open" => PunctClass::OpenParen,
                        "close" => PunctClass::CloseParen,
                        "other" => PunctClass::Other,
                        _ => return Err(format!("unknown punctuation class {class:?}")),
                    };
                    (label.to_string(), Some(class))
                }
            };
            const NAMES: [&str; 14] = [
                "N", "Adj", "Art", "Pn", "V", "Num", "Advb", "Adp", "Conj", "Pt", "Res",
                "Abbr", "Punct", "Dig",
            ];
            if !NAMES.contains(&label.as_str()) {
                return Err(format!("unknown coarse label {label:?}"));
            }
            atoms.push(PatternAtom { label, punct });
        }
        if atoms.is_empty() {
            return Err("empty pattern".into());
        }
        Ok(PatternTemplate { atoms })
    }

    /// Exact-length match over the entry's tagged tokens.
    pub fn matches(&self, tokens: &[Token]) -> bool {
        if self.atoms.len() != tokens.len() {
            return false;
        }
        self.atoms.iter().zip(tokens).all(|(atom, token)| {
            let Some(tag) = &token.tag else { return false };
            let label = coarse(tag);
            label.name() == atom.label
                && atom.punct.map_or(true, |c| label.punct_class() == Some(c))
        })
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            out.push_str(&atom.label);
            if let Some(class) = atom.punct {
                let _ = write!(
                    out,
                    ":{}",
                    match class {
                        PunctClass::Comma => "comma",
                        PunctClass::OpenParen => "open",
                        PunctClass::CloseParen => "close",
                        PunctClass::Other => "other",
                    }
                );
            }
        }
        out
    }
}

/// Feature conditions over the matched tokens, 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    CaseIs { position: usize, case: Case },
    SameCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Predicate {
    conditions: Vec<Condition>,
}

impl Predicate {
    pub fn parse(spec: &str) -> std::result::Result<Self, String> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "-" {
            return Ok(Predicate::default());
        }
        let mut conditions = Vec::new();
        for atom in spec.split('&') {
            let atom = atom.trim();
            if atom == "samecase" {
                conditions.push(Condition::SameCase);
                continue;
            }
            let (lhs, rhs) = atom
                .split_once('=')
                .ok_or_else(|| format!("bad predicate atom {atom:?}"))?;
            let position: usize = lhs
                .strip_prefix("case")
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| format!("bad predicate atom {atom:?}"))?;
            if position == 0 {
                return Err("positions are 1-based".into());
            }
            let case =
                Case::parse_code(rhs).ok_or_else(|| format!("unknown case code {rhs:?}"))?;
            conditions.push(Condition::CaseIs { position, case });
        }
        Ok(Predicate { conditions })
    }

    pub fn holds(&self, tokens: &[Token]) -> bool {
        self.conditions.iter().all(|c| match c {
            Condition::CaseIs { position, case } => tokens
                .get(position - 1)
                .and_then(|t| t.tag.as_ref())
                .map_or(false, |tag| tag.case == Some(*case)),
            Condition::SameCase => {
                let mut cases = tokens.iter().map(|t| t.tag.as_ref().and_then(|x| x.case));
                match cases.next().flatten() {
                    None => false,
                    Some(first) => cases.all(|c| c == Some(first)),
                }
            }
        })
    }

    pub fn display(&self) -> String {
        if self.conditions.is_empty() {
            return "-".to_string();
        }
        self.conditions
            .iter()
            .map(|c| match c {
                Condition::SameCase => "samecase".to_string(),
                Condition::CaseIs { position, case } => {
                    let code = match case {
                        Case::Nom => "Nm",
                        Case::Gen => "Ge",
                        Case::Acc => "Ac",
                        Case::Voc => "Vo",
                        Case::Dat => "Da",
                    };
                    format!("case{position}={code}")
                }
            })
            .collect::<Vec<_>>()
            .join("&")
    }
}

/// An indivisibility rule: first template+predicate alternative that matches
/// wins the rule; rules are tried in file order.
#[derive(Debug, Clone)]
pub struct IndivisibilityRule {
    pub id: String,
    pub name: String,
    pub alternatives: Vec<(PatternTemplate, Predicate)>,
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub rules: Vec<IndivisibilityRule>,
    pub conjunction_lemmas: BTreeSet<String>,
    pub etc_phrases: Vec<Vec<String>>,
    pub etc_pronoun_lemmas: BTreeSet<String>,
    pub inversion_exceptions: Vec<PatternTemplate>,
}

impl RuleSet {
    pub fn builtin() -> Self {
        RuleSet::from_str_named(RULES_EL, "<builtin rules>").expect("builtin rules parse")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RuleSet::from_str_named(&text, &path.to_string_lossy())
    }

    pub fn from_str_named(text: &str, origin: &str) -> Result<Self> {
        let mut rules: Vec<IndivisibilityRule> = Vec::new();
        let mut conjunction_lemmas = BTreeSet::new();
        let mut etc_phrases = Vec::new();
        let mut etc_pronoun_lemmas = BTreeSet::new();
        let mut inversion_exceptions = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::DataFile {
                what: "rule set",
                path: origin.into(),
                line: lineno + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            match cols[0] {
                "rule" => {
                    if cols.len() != 5 {
                        return Err(err(
                            "expected rule<TAB>id<TAB>name<TAB>pattern<TAB>predicate".into()
                        ));
                    }
                    let (id, name) = (cols[1].to_string(), cols[2].to_string());
                    let template = PatternTemplate::parse(cols[3]).map_err(err)?;
                    let predicate = Predicate::parse(cols[4]).map_err(err)?;
                    match rules.iter_mut().find(|r| r.id == id) {
                        Some(rule) => rule.alternatives.push((template, predicate)),
                        None => rules.push(IndivisibilityRule {
                            id,
                            name,
                            alternatives: vec![(template, predicate)],
                        }),
                    }
                }
                "conjunction" => {
                    conjunction_lemmas.insert(word_col(&cols, &err)?.to_lowercase());
                }
                "etc-phrase" => {
                    let phrase: Vec<String> = word_col(&cols, &err)?
                        .split_whitespace()
                        .map(|w| w.to_lowercase())
                        .collect();
                    if phrase.is_empty() {
                        return Err(err("empty etc-phrase".into()));
                    }
                    etc_phrases.push(phrase);
                }
                "etc-pronoun" => {
                    etc_pronoun_lemmas.insert(word_col(&cols, &err)?.to_lowercase());
                }
                "inversion" => {
                    inversion_exceptions.push(PatternTemplate::parse(word_col(&cols, &err)?).map_err(err)?);
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        if rules.is_empty() {
            return Err(Error::DataFile {
                what: "rule set",
                path: origin.into(),
                line: 0,
                message: "no indivisibility rules defined".into(),
            });
        }
        Ok(RuleSet {
            rules,
            conjunction_lemmas,
            etc_phrases,
            etc_pronoun_lemmas,
            inversion_exceptions,
        })
    }

    /// Canonical re-serialization in the input grammar (for `dump-rules`).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            for (template, predicate) in &rule.alternatives {
                let _ = writeln!(
                    out,
                    "rule\t{}\t{}\t{}\t{}",
                    rule.id,
                    rule.name,
                    template.display(),
                    predicate.display()
                );
            }
        }
        for lemma in &self.conjunction_lemmas {
            let _ = writeln!(out, "conjunction\t{lemma}");
        }
        for phrase in &self.etc_phrases {
            let _ = writeln!(out, "etc-phrase\t{}", phrase.join(" "));
        }
        for lemma in &self.etc_pronoun_lemmas {
            let _ = writeln!(out, "etc-pronoun\t{lemma}");
        }
        for template in &self.inversion_exceptions {
            let _ = writeln!(out, "inversion\t{}", template.display());
        }
        out
    }
}

fn word_col<'a>(
    cols: &[&'a str],
    err: &impl Fn(String) -> Error,
) -> Result<&'a str> {
    if cols.len() != 2 || cols[1].trim().is_empty() {
        return Err(err(format!("{} takes exactly one value column", cols[0])));
    }
    Ok(cols[1].trim())
}

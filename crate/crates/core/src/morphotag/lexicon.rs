//! Deterministic lexicon-based fallback tagger.
//!
//! Each word token gets the unique tag its lexicon entry lists, or — when
//! the lexicon is ambiguous — the winner of the first applicable context
//! rule. Context rules are data: ordered patterns over neighbouring coarse
//! labels plus case agreement, evaluated first-match-wins. Unknown words
//! become Residual. The result is a pure function of (tokens, lexicon,
//! rules, mapping).

use std::collections::HashMap;
use std::path::Path;

use crate::diag::Diagnostic;
use crate::entry::{ConceptEntry, Token};
use crate::error::{Error, Result};
use crate::morphotag::{coarse, synthetic_tag, Case, MorphoTag, PosCategory, TagsetMapping};

const LEXICON_EL: &str = include_str!("../../data/lexicon-el.tsv");
const CONTEXT_RULES_EL: &str = include_str!("../../data/context-rules-el.tsv");

/// surface -> candidate tag strings in file order (+ optional lemma).
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, LexEntry>,
}

#[derive(Debug, Clone)]
struct LexEntry {
    tags: Vec<String>,
    lemma: Option<String>,
}

impl Lexicon {
    pub fn builtin() -> Self {
        Lexicon::from_str_named(LEXICON_EL, "<builtin lexicon>").expect("builtin lexicon parses")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Lexicon::from_str_named(&text, &path.to_string_lossy())
    }

    /// Line format: `surface<TAB>tag[,tag...][<TAB>lemma]`.
    pub fn from_str_named(text: &str, origin: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let surface = cols.next().unwrap_or("").trim();
            let tags_col = cols.next().unwrap_or("").trim();
            let lemma = cols.next().map(|s| s.trim().to_string()).filter(|s| !s.is_empty());
            if surface.is_empty() || tags_col.is_empty() {
                return Err(Error::DataFile {
                    what: "lexicon",
                    path: origin.into(),
                    line: lineno + 1,
                    message: "expected surface<TAB>tag[,tag...]".into(),
                });
            }
            let tags: Vec<String> = tags_col.split(',').map(|t| t.trim().to_string()).collect();
            entries.insert(surface.to_string(), LexEntry { tags, lemma });
        }
        Ok(Lexicon { entries })
    }

    fn lookup(&self, surface: &str) -> Option<&LexEntry> {
        self.entries
            .get(surface)
            .or_else(|| self.entries.get(surface.to_lowercase().as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One disambiguation rule: all triggers must hold around the ambiguous
/// token, then the chooser picks among its candidate tags.
#[derive(Debug, Clone)]
pub struct ContextRule {
    pub id: String,
    triggers: Vec<Trigger>,
    choose: Chooser,
}

#[derive(Debug, Clone)]
enum Trigger {
    Neighbor {
        offset: isize,
        label: String,
        case: Option<Case>,
    },
    AtStart,
    AtEnd,
}

#[derive(Debug, Clone, Default)]
struct Chooser {
    coarse: Option<String>,
    subtype: Option<String>,
    case: Option<Case>,
    agree_offset: Option<isize>,
}

fn parse_offset(key: &str) -> Option<isize> {
    match key {
        "prev" => Some(-1),
        "prev2" => Some(-2),
        "next" => Some(1),
        "next2" => Some(2),
        _ => None,
    }
}

impl ContextRule {
    /// Line format: `rule_id<TAB>trigger-pattern<TAB>chosen-tag-filter`;
    /// grammar in docs/formats.md.
    pub fn parse_file(text: &str, origin: &str) -> Result<Vec<ContextRule>> {
        let mut rules = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::DataFile {
                what: "context rules",
                path: origin.into(),
                line: lineno + 1,
                message,
            };
            let mut cols = line.split('\t');
            let id = cols.next().unwrap_or("").trim().to_string();
            let trigger_col = cols.next().unwrap_or("").trim();
            let choose_col = cols.next().unwrap_or("").trim();
            if id.is_empty() || trigger_col.is_empty() || choose_col.is_empty() {
                return Err(err("expected rule_id<TAB>trigger<TAB>choose".into()));
            }

            let mut triggers = Vec::new();
            for atom in trigger_col.split_whitespace() {
                triggers.push(match atom {
                    "first" => Trigger::AtStart,
                    "last" => Trigger::AtEnd,
                    _ => {
                        let mut parts = atom.split(':');
                        let key = parts.next().unwrap_or("");
                        let offset = parse_offset(key)
                            .ok_or_else(|| err(format!("unknown trigger {atom:?}")))?;
                        let label = parts
                            .next()
                            .ok_or_else(|| err(format!("trigger {atom:?} needs a label")))?
                            .to_string();
                        let case = match parts.next() {
                            None => None,
                            Some(code) => Some(Case::parse_code(code).ok_or_else(|| {
                                err(format!("unknown case code in trigger {atom:?}"))
                            })?),
                        };
                        Trigger::Neighbor { offset, label, case }
                    }
                });
            }

            let mut choose = Chooser::default();
            for atom in choose_col.split_whitespace() {
                let (key, value) = atom
                    .split_once(':')
                    .ok_or_else(|| err(format!("bad chooser atom {atom:?}")))?;
                match key {
                    "cat" => choose.coarse = Some(value.to_string()),
                    "sub" => choose.subtype = Some(value.to_string()),
                    "case" => {
                        choose.case = Some(Case::parse_code(value).ok_or_else(|| {
                            err(format!("unknown case code in chooser {atom:?}"))
                        })?)
                    }
                    "agree" => {
                        choose.agree_offset = Some(
                            parse_offset(value)
                                .ok_or_else(|| err(format!("bad agree target {atom:?}")))?,
                        )
                    }
                    _ => return Err(err(format!("unknown chooser atom {atom:?}"))),
                }
            }
            if choose.coarse.is_none() && choose.subtype.is_none() && choose.case.is_none() {
                return Err(err("chooser must constrain at least cat, sub or case".into()));
            }
            rules.push(ContextRule { id, triggers, choose });
        }
        Ok(rules)
    }
}

pub struct LexiconTagger {
    lexicon: Lexicon,
    rules: Vec<ContextRule>,
    mapping: TagsetMapping,
}

impl LexiconTagger {
    pub fn new(lexicon: Lexicon, rules: Vec<ContextRule>, mapping: TagsetMapping) -> Self {
        LexiconTagger { lexicon, rules, mapping }
    }

    pub fn builtin() -> Self {
        let rules = ContextRule::parse_file(CONTEXT_RULES_EL, "<builtin context rules>")
            .expect("builtin context rules parse");
        LexiconTagger::new(Lexicon::builtin(), rules, TagsetMapping::builtin())
    }

    pub fn builtin_rules() -> Vec<ContextRule> {
        ContextRule::parse_file(CONTEXT_RULES_EL, "<builtin context rules>")
            .expect("builtin context rules parse")
    }

    /// Tag every token of the entry in place. Already-tagged tokens are left
    /// untouched, so pre-tagged corpora pass through unchanged.
    pub fn tag_entry(&self, entry: &mut ConceptEntry, diags: &mut Vec<Diagnostic>) {
        // candidates per still-ambiguous token index
        let mut pending: HashMap<usize, Vec<MorphoTag>> = HashMap::new();

        for i in 0..entry.tokens.len() {
            if entry.tokens[i].tag.is_some() {
                continue;
            }
            let (surface, kind) = (entry.tokens[i].surface.clone(), entry.tokens[i].kind);
            if let Some(tag) = synthetic_tag(kind, &surface) {
                entry.tokens[i].tag = Some(tag);
                continue;
            }
            match self.lexicon.lookup(&surface) {
                None => {
                    entry.tokens[i].tag = Some(MorphoTag::of(PosCategory::Residual));
                    diags.push(Diagnostic::warning(
                        "unknown-word",
                        format!(
                            "{}: word {surface:?} not in lexicon, tagged Residual",
                            entry.entry_id
                        ),
                    ));
                }
                Some(lex) => {
                    if entry.tokens[i].lemma.is_none() {
                        entry.tokens[i].lemma = lex.lemma.clone();
                    }
                    let mut decoded = Vec::new();
                    for tag_string in &lex.tags {
                        match self.mapping.decode_tag(tag_string, diags) {
                            Ok(tag) => decoded.push(tag),
                            Err(e) => diags.push(Diagnostic::warning(
                                "tag-decode",
                                format!("lexicon tag for {surface:?}: {e}"),
                            )),
                        }
                    }
                    match decoded.len() {
                        0 => {
                            entry.tokens[i].tag = Some(MorphoTag::of(PosCategory::Residual));
                        }
                        1 => entry.tokens[i].tag = Some(decoded.remove(0)),
                        _ => {
                            pending.insert(i, decoded);
                        }
                    }
                }
            }
        }

        // Resolve ambiguous tokens left to right so earlier resolutions feed
        // later agreement checks.
        let mut indices: Vec<usize> = pending.keys().copied().collect();
        indices.sort_unstable();
        for i in indices {
            let candidates = pending.get(&i).cloned().unwrap_or_default();
            let chosen = self.resolve(&entry.tokens, i, &candidates, &pending);
            entry.tokens[i].tag = Some(chosen);
        }
    }

    fn resolve(
        &self,
        tokens: &[Token],
        index: usize,
        candidates: &[MorphoTag],
        pending: &HashMap<usize, Vec<MorphoTag>>,
    ) -> MorphoTag {
        for rule in &self.rules {
            if !rule
                .triggers
                .iter()
                .all(|t| self.trigger_holds(t, tokens, index, pending))
            {
                continue;
            }
            if let Some(winner) = self.choose(&rule.choose, tokens, index, candidates) {
                return winner;
            }
        }
        // No rule applies: keep the first lexicon listing.
        candidates[0].clone()
    }

    fn trigger_holds(
        &self,
        trigger: &Trigger,
        tokens: &[Token],
        index: usize,
        pending: &HashMap<usize, Vec<MorphoTag>>,
    ) -> bool {
        match trigger {
            Trigger::AtStart => index == 0,
            Trigger::AtEnd => index + 1 == tokens.len(),
            Trigger::Neighbor { offset, label, case } => {
                let Some(pos) = index.checked_add_signed(*offset) else {
                    return false;
                };
                let Some(neighbor) = tokens.get(pos) else {
                    return false;
                };
                let matches_tag = |tag: &MorphoTag| {
                    coarse(tag).name() == label
                        && case.map_or(true, |wanted| tag.case == Some(wanted))
                };
                match &neighbor.tag {
                    Some(tag) => matches_tag(tag),
                    // unresolved neighbour: any of its candidates may justify
                    // the trigger
                    None => pending
                        .get(&pos)
                        .map_or(false, |cands| cands.iter().any(matches_tag)),
                }
            }
        }
    }

    fn choose(
        &self,
        chooser: &Chooser,
        tokens: &[Token],
        index: usize,
        candidates: &[MorphoTag],
    ) -> Option<MorphoTag> {
        let filtered: Vec<&MorphoTag> = candidates
            .iter()
            .filter(|t| {
                chooser
                    .coarse
                    .as_deref()
                    .map_or(true, |c| coarse(t).name() == c)
                    && chooser
                        .subtype
                        .as_deref()
                        .map_or(true, |s| t.subtype.as_deref() == Some(s))
                    && chooser.case.map_or(true, |c| t.case == Some(c))
            })
            .collect();
        if filtered.is_empty() {
            return None;
        }
        if let Some(offset) = chooser.agree_offset {
            let neighbor_tag = index
                .checked_add_signed(offset)
                .and_then(|pos| tokens.get(pos))
                .and_then(|t| t.tag.as_ref())?;
            if neighbor_tag.gender.is_none()
                && neighbor_tag.number.is_none()
                && neighbor_tag.case.is_none()
            {
                return None;
            }
            return filtered
                .into_iter()
                .find(|t| {
                    t.gender == neighbor_tag.gender
                        && t.number == neighbor_tag.number
                        && t.case == neighbor_tag.case
                })
                .cloned();
        }
        Some(filtered[0].clone())
    }
}

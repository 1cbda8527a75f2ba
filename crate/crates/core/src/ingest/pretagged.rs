use crate::diag::Diagnostic;
use crate::entry::{ConceptEntry, CorpusSource, FormatHint, Token};
use crate::error::{Error, Result};
use crate::ingest::LoadOutcome;
use crate::morphotag::{MorphoTag, PosCategory, TagsetMapping};
use crate::tokenize::classify_surface;

/// Load a tagger-output document: entries holding sentence elements holding
/// token elements with word/tag/lemma attributes (XML), or the equivalent
/// token-tsv table. Tags are decoded through the mapping; an undecodable tag
/// keeps the token with category Residual and a diagnostic.
pub fn load_pretagged(source: &CorpusSource, mapping: &TagsetMapping) -> Result<LoadOutcome> {
    let bytes = std::fs::read(&source.path).map_err(|e| Error::io(&source.path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Encoding {
        path: source.path.clone(),
    })?;
    let corpus_id = source.default_corpus_id();
    let mut outcome = match source.format_hint {
        FormatHint::TaggedXml => load_tagged_xml(&text, source, &corpus_id, mapping)?,
        FormatHint::TokenTsv => load_token_tsv(&text, source, &corpus_id, mapping)?,
        other => {
            return Err(Error::Config(format!(
                "format hint {other:?} is not a pre-tagged format"
            )))
        }
    };
    if outcome.entries.is_empty() {
        outcome.diagnostics.push(Diagnostic::warning(
            "empty-corpus",
            format!("{}: no entries found", source.path.display()),
        ));
    }
    Ok(outcome)
}

struct RawToken {
    word: String,
    tag: String,
    lemma: Option<String>,
}

fn build_entry(
    entry_id: String,
    lang: &str,
    corpus_id: &str,
    raw_tokens: Vec<RawToken>,
    mapping: &TagsetMapping,
    diags: &mut Vec<Diagnostic>,
) -> ConceptEntry {
    let mut tokens = Vec::with_capacity(raw_tokens.len());
    for (i, raw) in raw_tokens.into_iter().enumerate() {
        let mut token = Token::new(&raw.word, classify_surface(&raw.word), i);
        if i > 0 {
            token.gap_before = " ".to_string();
        }
        token.lemma = raw.lemma;
        token.tag = match mapping.decode_tag(&raw.tag, diags) {
            Ok(tag) => Some(tag),
            Err(e) => {
                diags.push(Diagnostic::warning(
                    "tag-decode",
                    format!("{entry_id}: {e}; token kept as Residual"),
                ));
                Some(MorphoTag::of(PosCategory::Residual))
            }
        };
        tokens.push(token);
    }
    let raw_label = crate::tokenize::reconstruct(&tokens);
    let mut entry = ConceptEntry::new(entry_id, raw_label, lang, corpus_id);
    entry.tokens = tokens;
    entry
}

fn load_tagged_xml(
    text: &str,
    source: &CorpusSource,
    corpus_id: &str,
    mapping: &TagsetMapping,
) -> Result<LoadOutcome> {
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::MalformedDocument {
        path: source.path.clone(),
        message: e.to_string(),
    })?;
    let root = doc.root_element();
    let lang = root.attribute("lang").unwrap_or("und").to_lowercase();

    let mut outcome = LoadOutcome::default();
    let paragraphs: Vec<roxmltree::Node> = if root.has_tag_name("p") {
        vec![root]
    } else {
        root.descendants().filter(|n| n.has_tag_name("p")).collect()
    };
    for (n, p) in paragraphs.iter().enumerate() {
        let entry_id = p
            .attribute("id")
            .map(str::to_string)
            .unwrap_or_else(|| format!("{corpus_id}:{}", n + 1));
        let mut raw_tokens = Vec::new();
        for t in p.descendants().filter(|n| n.has_tag_name("t")) {
            let word = t.attribute("word").ok_or_else(|| Error::MalformedDocument {
                path: source.path.clone(),
                message: format!("{entry_id}: token element without word attribute"),
            })?;
            let tag = t.attribute("tag").ok_or_else(|| Error::MalformedDocument {
                path: source.path.clone(),
                message: format!("{entry_id}: token element without tag attribute"),
            })?;
            raw_tokens.push(RawToken {
                word: word.to_string(),
                tag: tag.to_string(),
                lemma: t.attribute("lemma").map(str::to_string),
            });
        }
        if raw_tokens.is_empty() {
            outcome.diagnostics.push(Diagnostic::warning(
                "entry-dropped",
                format!("{entry_id}: no token elements"),
            ));
            continue;
        }
        outcome.entries.push(build_entry(
            entry_id,
            &lang,
            corpus_id,
            raw_tokens,
            mapping,
            &mut outcome.diagnostics,
        ));
    }
    Ok(outcome)
}

/// Token-tsv: `# id = <entry>` introduces an entry, `# lang = <tag>` sets the
/// document language, token lines are `index<TAB>word<TAB>tag[<TAB>lemma]`
/// with "_" for a missing lemma; a blank line ends the entry.
fn load_token_tsv(
    text: &str,
    source: &CorpusSource,
    corpus_id: &str,
    mapping: &TagsetMapping,
) -> Result<LoadOutcome> {
    let mut outcome = LoadOutcome::default();
    let mut lang = "und".to_string();
    let mut current_id: Option<String> = None;
    let mut raw_tokens: Vec<RawToken> = Vec::new();
    let flush = |id: &mut Option<String>,
                     raw: &mut Vec<RawToken>,
                     outcome: &mut LoadOutcome,
                     lang: &str| {
        if let Some(entry_id) = id.take() {
            if raw.is_empty() {
                outcome.diagnostics.push(Diagnostic::warning(
                    "entry-dropped",
                    format!("{entry_id}: no token lines"),
                ));
            } else {
                outcome.entries.push(build_entry(
                    entry_id,
                    lang,
                    corpus_id,
                    std::mem::take(raw),
                    mapping,
                    &mut outcome.diagnostics,
                ));
            }
        }
        raw.clear();
    };

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim_end();
        if line.is_empty() {
            flush(&mut current_id, &mut raw_tokens, &mut outcome, &lang);
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(value) = comment.strip_prefix("id =") {
                flush(&mut current_id, &mut raw_tokens, &mut outcome, &lang);
                current_id = Some(value.trim().to_string());
            } else if let Some(value) = comment.strip_prefix("lang =") {
                lang = value.trim().to_lowercase();
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 3 {
            return Err(Error::MalformedDocument {
                path: source.path.clone(),
                message: format!(
                    "line {}: expected index<TAB>word<TAB>tag[<TAB>lemma]",
                    lineno + 1
                ),
            });
        }
        if current_id.is_none() {
            current_id = Some(format!("{corpus_id}:{}", outcome.entries.len() + 1));
        }
        raw_tokens.push(RawToken {
            word: cols[1].to_string(),
            tag: cols[2].to_string(),
            lemma: cols
                .get(3)
                .filter(|l| !l.is_empty() && **l != "_")
                .map(|l| l.to_string()),
        });
    }
    flush(&mut current_id, &mut raw_tokens, &mut outcome, &lang);
    Ok(outcome)
}

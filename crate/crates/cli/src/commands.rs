use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use koscope_core::classify::{classify, Outcome, RuleSet};
use koscope_core::entry::{ConceptEntry, CorpusSource, Token, TokenKind};
use koscope_core::error::Error;
use koscope_core::ingest;
use koscope_core::metrics::render;
use koscope_core::morphotag::{Lexicon, LexiconTagger, MorphoTag, PosCategory, TagsetMapping};
use koscope_core::pipeline::{analyze_entries, AnalysisOptions, AnalyzedCorpus};
use koscope_core::suggest::{emit_fragment, proposal_document, split, Fragment, ProposalSidecar};
use koscope_core::tokenize;

use crate::config::{ConfigFile, RunConfig, RunConfigBuilder};
use crate::{AnalyzeArgs, ClassifyArgs, DumpRulesArgs, SuggestArgs, TagArgs};

struct Resources {
    rules: RuleSet,
    mapping: TagsetMapping,
    tagger: LexiconTagger,
}

fn load_resources(
    rules: Option<&Path>,
    tagset: Option<&Path>,
    lexicon: Option<&Path>,
) -> Result<Resources> {
    let rules = match rules {
        Some(path) => RuleSet::from_path(path)?,
        None => RuleSet::builtin(),
    };
    let mapping = match tagset {
        Some(path) => TagsetMapping::from_path(path)?,
        None => TagsetMapping::builtin(),
    };
    let lexicon = match lexicon {
        Some(path) => Lexicon::from_path(path)?,
        None => Lexicon::builtin(),
    };
    let tagger = LexiconTagger::new(lexicon, LexiconTagger::builtin_rules(), mapping.clone());
    Ok(Resources {
        rules,
        mapping,
        tagger,
    })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| Error::io(parent, e))
            .context("creating output directory")?;
    }
    std::fs::write(path, bytes)
        .map_err(|e| Error::io(path, e))
        .context("writing output")?;
    Ok(())
}

fn analyze_one(
    input: &Path,
    cfg: &RunConfig,
    resources: &Resources,
) -> Result<(String, AnalyzedCorpus)> {
    let source = CorpusSource::new(input, cfg.format)
        .with_label_properties(cfg.label_properties.clone());
    let corpus_id = source.default_corpus_id();
    let outcome = ingest::load(&source, &cfg.lang, &corpus_id, &resources.mapping)?;
    let options = AnalysisOptions {
        strip_set: cfg.strip_set.clone(),
        dedup: cfg.dedup,
        top_k: cfg.top_k,
        thresholds: cfg.thresholds,
    };
    let analyzed = analyze_entries(
        outcome.entries,
        &corpus_id,
        &resources.tagger,
        &resources.rules,
        &options,
        outcome.diagnostics,
    )?;
    Ok((corpus_id, analyzed))
}

fn proposals_for(
    analyzed: &AnalyzedCorpus,
    rules: &RuleSet,
    base_iri: &str,
) -> Result<(String, ProposalSidecar)> {
    let mut fragments: Vec<Fragment> = Vec::new();
    let mut sidecar = ProposalSidecar {
        base_iri: base_iri.to_string(),
        proposals: Vec::new(),
    };
    for (entry, verdict) in analyzed.entries.iter().zip(&analyzed.verdicts) {
        if let Some(decomposition) = split(entry, verdict, rules) {
            let fragment = emit_fragment(&decomposition, base_iri)?;
            sidecar.proposals.extend(fragment.records.iter().cloned());
            fragments.push(fragment);
        }
    }
    Ok((proposal_document(&fragments), sidecar))
}

pub fn analyze(args: AnalyzeArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfigBuilder {
        file,
        inputs: args.inputs,
        format: args.format,
        lang: args.lang,
        rules: args.rules,
        tagset: args.tagset,
        lexicon: args.lexicon,
        top_k: args.top_k,
        out: args.out,
        report_format: args.report_format,
        strip: args.strip,
        no_dedup: args.no_dedup,
        suggest: args.suggest,
        base_iri: args.base_iri,
        thresholds: args.thresholds,
        label_properties: args.label_properties,
    }
    .resolve()?;
    if cfg.suggest && cfg.out.is_none() {
        return Err(Error::Config("--suggest with analyze needs --out".into()).into());
    }

    let resources = load_resources(
        cfg.rules.as_deref(),
        cfg.tagset.as_deref(),
        cfg.lexicon.as_deref(),
    )?;

    let single = cfg.inputs.len() == 1;
    for input in &cfg.inputs {
        let (corpus_id, analyzed) = analyze_one(input, &cfg, &resources)?;
        let bytes = render(&analyzed.report, cfg.report_format)?;

        // single input + non-directory --out writes that file; otherwise the
        // out path is a directory holding one report per corpus
        let report_path = match &cfg.out {
            None => None,
            Some(out) if single && !out.is_dir() => Some(out.clone()),
            Some(out) => Some(out.join(format!(
                "{corpus_id}.report.{}",
                cfg.report_format.extension()
            ))),
        };
        match &report_path {
            None => std::io::stdout()
                .write_all(&bytes)
                .context("writing report to stdout")?,
            Some(path) => write_output(path, &bytes)?,
        }

        if cfg.suggest {
            let (document, sidecar) = proposals_for(&analyzed, &resources.rules, &cfg.base_iri)?;
            let report_path = report_path.expect("--suggest requires --out");
            let dir = if cfg.out.as_ref().is_some_and(|o| o.is_dir()) {
                cfg.out.clone().unwrap()
            } else {
                report_path.parent().unwrap_or(Path::new(".")).to_path_buf()
            };
            write_output(&dir.join(format!("{corpus_id}.proposals.nt")), document.as_bytes())?;
            let sidecar_json = serde_json::to_vec_pretty(&sidecar)?;
            write_output(
                &dir.join(format!("{corpus_id}.proposals.json")),
                &sidecar_json,
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    pattern: String,
    #[serde(flatten)]
    outcome: Outcome,
}

/// Surface stand-in for a tags-only token, so lemma-based marker scans
/// behave as the tag string implies.
fn synthetic_surface(tag: &MorphoTag, index: usize, rules: &RuleSet) -> String {
    match tag.category {
        PosCategory::Conjunction if tag.subtype.as_deref() == Some("Coordinative") => rules
            .conjunction_lemmas
            .iter()
            .next()
            .cloned()
            .unwrap_or_else(|| "and".into()),
        PosCategory::Punctuation => match tag.subtype.as_deref() {
            Some("Comma") => ",".into(),
            Some("OpenParen") => "(".into(),
            Some("CloseParen") => ")".into(),
            _ => ".".into(),
        },
        PosCategory::Digit => "0".into(),
        _ => format!("w{}", index + 1),
    }
}

pub fn classify_one(args: ClassifyArgs) -> Result<()> {
    let resources = load_resources(args.rules.as_deref(), args.tagset.as_deref(), None)?;
    let tag_strings: Vec<&str> = args.tags.split_whitespace().collect();
    if tag_strings.is_empty() {
        return Err(Error::Config("--tags must list at least one tag".into()).into());
    }

    let mut diags = Vec::new();
    let mut tags = Vec::with_capacity(tag_strings.len());
    for s in &tag_strings {
        tags.push(resources.mapping.decode_tag(s, &mut diags)?);
    }
    for d in &diags {
        eprintln!("warning: {}", d.message);
    }

    let surfaces: Vec<String> = match &args.label {
        Some(label) => {
            let tokens = tokenize::tokenize(label);
            if tokens.len() != tags.len() {
                return Err(Error::Config(format!(
                    "label has {} tokens but {} tags were given",
                    tokens.len(),
                    tags.len()
                ))
                .into());
            }
            tokens.into_iter().map(|t| t.surface).collect()
        }
        None => tags
            .iter()
            .enumerate()
            .map(|(i, t)| synthetic_surface(t, i, &resources.rules))
            .collect(),
    };

    let mut entry = ConceptEntry::new("cli:1", surfaces.join(" "), "und", "cli");
    entry.tokens = surfaces
        .iter()
        .enumerate()
        .map(|(i, surface)| {
            let mut token = Token::new(surface.clone(), tokenize::classify_surface(surface), i);
            if i > 0 {
                token.gap_before = " ".into();
            }
            token.tag = Some(tags[i].clone());
            token
        })
        .collect();

    let verdict = classify(&entry, &resources.rules)?;
    let output = ClassifyOutput {
        label: args.label,
        pattern: verdict.pattern.canonical(),
        outcome: verdict.outcome,
    };
    println!("{}", serde_json::to_string_pretty(&output)?);
    Ok(())
}

pub fn tag(args: TagArgs) -> Result<()> {
    let resources = load_resources(None, args.tagset.as_deref(), args.lexicon.as_deref())?;
    let lang = args.lang.unwrap_or_else(|| "el".into());
    let strip_set = tokenize::strip_set_from(
        args.strip.as_deref().unwrap_or(tokenize::DEFAULT_STRIP_SET),
    );

    let source = CorpusSource::new(&args.input, koscope_core::entry::FormatHint::Lines);
    let corpus_id = source.default_corpus_id();
    let outcome = ingest::load_plaintext(&source, &lang, &corpus_id)?;
    for d in &outcome.diagnostics {
        eprintln!("warning: {}", d.message);
    }

    let mut out = String::new();
    let _ = writeln!(out, "# lang = {lang}");
    let mut diags = Vec::new();
    for mut entry in outcome.entries {
        match tokenize::preprocess(&entry.raw_label, &strip_set) {
            Ok(normalized) => {
                entry.raw_label = normalized;
                entry.tokens = tokenize::tokenize(&entry.raw_label);
            }
            Err(_) => {
                eprintln!(
                    "warning: {}: label empty after preprocessing, entry skipped",
                    entry.entry_id
                );
                continue;
            }
        }
        let _ = writeln!(out, "# id = {}", entry.entry_id);
        if args.tokens_only {
            for token in &entry.tokens {
                let kind = match token.kind {
                    TokenKind::Word => "word",
                    TokenKind::Digit => "digit",
                    TokenKind::Punct => "punct",
                    TokenKind::Symbol => "symbol",
                };
                let _ = writeln!(out, "{}\t{}\t{}", token.index, token.surface, kind);
            }
        } else {
            resources.tagger.tag_entry(&mut entry, &mut diags);
            for token in &entry.tokens {
                let tag = token.tag.as_ref().expect("tagger covers every token");
                let encoded = resources.mapping.encode_tag(tag)?;
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    token.index + 1,
                    token.surface,
                    encoded,
                    token.lemma.as_deref().unwrap_or("_")
                );
            }
        }
        out.push('\n');
    }
    for d in &diags {
        eprintln!("warning: {}", d.message);
    }

    match &args.out {
        None => print!("{out}"),
        Some(path) => write_output(path, out.as_bytes())?,
    }
    Ok(())
}

pub fn suggest(args: SuggestArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfigBuilder {
        file,
        inputs: args.inputs,
        format: args.format,
        lang: args.lang,
        rules: args.rules,
        tagset: args.tagset,
        lexicon: args.lexicon,
        top_k: None,
        out: args.out,
        report_format: None,
        strip: args.strip,
        no_dedup: args.no_dedup,
        suggest: true,
        base_iri: args.base_iri,
        thresholds: None,
        label_properties: None,
    }
    .resolve()?;

    let resources = load_resources(
        cfg.rules.as_deref(),
        cfg.tagset.as_deref(),
        cfg.lexicon.as_deref(),
    )?;

    for input in &cfg.inputs {
        let (corpus_id, analyzed) = analyze_one(input, &cfg, &resources)?;
        let (document, sidecar) = proposals_for(&analyzed, &resources.rules, &cfg.base_iri)?;
        match &cfg.out {
            None => print!("{document}"),
            Some(dir) => {
                write_output(&dir.join(format!("{corpus_id}.proposals.nt")), document.as_bytes())?;
                write_output(
                    &dir.join(format!("{corpus_id}.proposals.json")),
                    &serde_json::to_vec_pretty(&sidecar)?,
                )?;
            }
        }
    }
    Ok(())
}

pub fn dump_rules(args: DumpRulesArgs) -> Result<()> {
    let rules = match args.rules.as_deref() {
        Some(path) => RuleSet::from_path(path)?,
        None => RuleSet::builtin(),
    };
    print!("{}", rules.dump());
    Ok(())
}

//! Run configuration: optional TOML config file with command-line flags
//! taking precedence, resolved into one validated struct.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

use koscope_core::entry::{FormatHint, SKOS_ALT_LABEL, SKOS_HIDDEN_LABEL, SKOS_PREF_LABEL};
use koscope_core::error::Error;
use koscope_core::metrics::{ReportFormat, Thresholds};
use koscope_core::tokenize::{strip_set_from, DEFAULT_STRIP_SET};

/// Contents of an optional `--config` TOML file. Every field has a flag
/// equivalent; flags override the file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub inputs: Option<Vec<PathBuf>>,
    pub format: Option<String>,
    pub lang: Option<String>,
    pub rules: Option<PathBuf>,
    pub tagset: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub top_k: Option<usize>,
    pub out: Option<PathBuf>,
    pub report_format: Option<String>,
    pub strip: Option<String>,
    pub dedup: Option<bool>,
    pub suggest: Option<bool>,
    pub base_iri: Option<String>,
    pub thresholds: Option<[f64; 2]>,
    pub label_properties: Option<Vec<String>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path, e))
            .context("reading config file")?;
        let parsed: ConfigFile = toml::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(parsed)
    }
}

/// Fully resolved analyze/suggest configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub format: FormatHint,
    pub lang: String,
    pub rules: Option<PathBuf>,
    pub tagset: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub top_k: usize,
    pub out: Option<PathBuf>,
    pub report_format: ReportFormat,
    pub strip_set: BTreeSet<char>,
    pub dedup: bool,
    pub suggest: bool,
    pub base_iri: String,
    pub thresholds: Thresholds,
    pub label_properties: Vec<String>,
}

pub fn parse_thresholds(spec: &str) -> Result<[f64; 2], Error> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Config(format!(
            "thresholds must be two comma-separated percentages, got {spec:?}"
        )));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Config(format!("bad threshold value {s:?}")))
    };
    Ok([parse(parts[0])?, parse(parts[1])?])
}

/// Expand label-property shortcuts (prefLabel, altLabel, hiddenLabel) to
/// their IRIs; anything containing a colon passes through as-is.
pub fn expand_label_property(name: &str) -> Result<String, Error> {
    match name.trim() {
        "prefLabel" | "pref" => Ok(SKOS_PREF_LABEL.to_string()),
        "altLabel" | "alt" => Ok(SKOS_ALT_LABEL.to_string()),
        "hiddenLabel" | "hidden" => Ok(SKOS_HIDDEN_LABEL.to_string()),
        other if other.contains(':') => Ok(other.to_string()),
        other => Err(Error::Config(format!(
            "unknown label property {other:?} (use prefLabel/altLabel/hiddenLabel or a full IRI)"
        ))),
    }
}

pub struct RunConfigBuilder {
    pub file: ConfigFile,
    pub inputs: Vec<PathBuf>,
    pub format: Option<String>,
    pub lang: Option<String>,
    pub rules: Option<PathBuf>,
    pub tagset: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub top_k: Option<usize>,
    pub out: Option<PathBuf>,
    pub report_format: Option<String>,
    pub strip: Option<String>,
    pub no_dedup: bool,
    pub suggest: bool,
    pub base_iri: Option<String>,
    pub thresholds: Option<String>,
    pub label_properties: Option<String>,
}

impl RunConfigBuilder {
    pub fn resolve(self) -> Result<RunConfig, Error> {
        let inputs = if self.inputs.is_empty() {
            self.file.inputs.unwrap_or_default()
        } else {
            self.inputs
        };
        if inputs.is_empty() {
            return Err(Error::Config("at least one --input is required".into()));
        }

        let format_name = self
            .format
            .or(self.file.format)
            .unwrap_or_else(|| "lines".into());
        let format = FormatHint::parse(&format_name)?;

        let top_k = self.top_k.or(self.file.top_k).unwrap_or(10);
        if top_k < 1 {
            return Err(Error::Config("--top-k must be at least 1".into()));
        }

        let report_format_name = self
            .report_format
            .or(self.file.report_format)
            .unwrap_or_else(|| "json".into());
        let report_format = ReportFormat::parse(&report_format_name)?;

        let thresholds = match self.thresholds {
            Some(spec) => parse_thresholds(&spec)?,
            None => self.file.thresholds.unwrap_or([10.0, 30.0]),
        };
        let thresholds = Thresholds {
            high_below: thresholds[0],
            low_above: thresholds[1],
        };
        thresholds.validate()?;

        let label_properties = match self.label_properties {
            Some(spec) => spec
                .split(',')
                .map(expand_label_property)
                .collect::<Result<Vec<_>, _>>()?,
            None => match self.file.label_properties {
                Some(names) => names
                    .iter()
                    .map(|n| expand_label_property(n))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![SKOS_PREF_LABEL.to_string()],
            },
        };

        Ok(RunConfig {
            inputs,
            format,
            lang: self.lang.or(self.file.lang).unwrap_or_else(|| "el".into()),
            rules: self.rules.or(self.file.rules),
            tagset: self.tagset.or(self.file.tagset),
            lexicon: self.lexicon.or(self.file.lexicon),
            top_k,
            out: self.out.or(self.file.out),
            report_format,
            strip_set: strip_set_from(
                self.strip
                    .or(self.file.strip)
                    .as_deref()
                    .unwrap_or(DEFAULT_STRIP_SET),
            ),
            dedup: if self.no_dedup {
                false
            } else {
                self.file.dedup.unwrap_or(true)
            },
            suggest: self.suggest || self.file.suggest.unwrap_or(false),
            base_iri: self
                .base_iri
                .or(self.file.base_iri)
                .unwrap_or_else(|| "http://example.org/proposal/".into()),
            thresholds,
            label_properties,
        })
    }
}

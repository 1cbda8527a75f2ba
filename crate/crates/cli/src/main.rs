mod commands;
mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Measure the conceptual atomicity of vocabulary terms: classify each
/// concept label as indivisible or divisible by morphosyntactic pattern
/// rules, report the corpus statistics, and propose decompositions.
#[derive(Parser)]
#[command(name = "koscope", version, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline over one or more corpora and write reports.
    Analyze(AnalyzeArgs),
    /// Classify one entry given inline positional tags (debugging aid).
    Classify(ClassifyArgs),
    /// Tokenize and tag a plaintext entry list, emitting a token table.
    Tag(TagArgs),
    /// Emit decomposition proposals for the divisible entries of a corpus.
    Suggest(SuggestArgs),
    /// Print the active rule set in its file grammar.
    DumpRules(DumpRulesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input corpus file; repeat for several corpora.
    #[arg(long = "input", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    /// Input format: lines, turtle, ntriples, tagged-xml, token-tsv.
    #[arg(long)]
    format: Option<String>,
    /// Language tag to harvest/annotate (primary subtags compared).
    #[arg(long)]
    lang: Option<String>,
    /// Rule-set file (defaults to the builtin rules).
    #[arg(long, env = "KOSCOPE_RULES")]
    rules: Option<PathBuf>,
    /// Tagset mapping file (defaults to the builtin mapping).
    #[arg(long)]
    tagset: Option<PathBuf>,
    /// Lexicon file for the fallback tagger (defaults to the builtin one).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// How many top patterns the pattern table lists.
    #[arg(long = "top-k")]
    top_k: Option<usize>,
    /// Output file (single input) or directory (several inputs).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json (canonical), csv, markdown.
    #[arg(long = "report-format")]
    report_format: Option<String>,
    /// Symbols stripped before tokenization (default "%*").
    #[arg(long)]
    strip: Option<String>,
    /// Keep duplicate entries instead of deduplicating.
    #[arg(long = "no-dedup")]
    no_dedup: bool,
    /// Also emit decomposition proposals next to each report (needs --out).
    #[arg(long)]
    suggest: bool,
    /// IRI prefix for proposed concepts.
    #[arg(long = "base-iri")]
    base_iri: Option<String>,
    /// Suitability thresholds as "HIGH,LOW" divisible percentages.
    #[arg(long, value_name = "HIGH,LOW")]
    thresholds: Option<String>,
    /// SKOS label properties to harvest (prefLabel, altLabel, hiddenLabel
    /// or full IRIs, comma-separated).
    #[arg(long = "label-properties")]
    label_properties: Option<String>,
    /// Optional TOML config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Whitespace-separated positional tag strings, e.g.
    /// "NoCmMaSgNm AjBaNePlGe NoCmNePlGe".
    #[arg(long)]
    tags: String,
    /// The entry's words; without it, surfaces are synthesized from the
    /// tags (coordinative conjunctions borrow the first and/or lemma of
    /// the rule set so marker scanning matches the tag string).
    #[arg(long)]
    label: Option<String>,
    #[arg(long, env = "KOSCOPE_RULES")]
    rules: Option<PathBuf>,
    #[arg(long)]
    tagset: Option<PathBuf>,
}

#[derive(Args)]
struct TagArgs {
    /// Plaintext entry list, one entry per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    lang: Option<String>,
    #[arg(long)]
    tagset: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    strip: Option<String>,
    /// Emit only index/surface/kind columns, without tagging.
    #[arg(long = "tokens-only")]
    tokens_only: bool,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuggestArgs {
    #[arg(long = "input", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    lang: Option<String>,
    #[arg(long, env = "KOSCOPE_RULES")]
    rules: Option<PathBuf>,
    #[arg(long)]
    tagset: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    strip: Option<String>,
    #[arg(long = "no-dedup")]
    no_dedup: bool,
    /// IRI prefix for proposed concepts.
    #[arg(long = "base-iri")]
    base_iri: Option<String>,
    /// Output directory for proposals.nt and proposals.json; N-Triples go
    /// to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DumpRulesArgs {
    #[arg(long, env = "KOSCOPE_RULES")]
    rules: Option<PathBuf>,
}

/// Exit codes: 0 success (warnings included), 1 input error, 2 config error.
fn exit_code(err: &anyhow::Error) -> i32 {
    use koscope_core::Error;
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<Error>() {
            return match core {
                Error::Config(_) | Error::InvalidBaseIri { .. } | Error::DataFile { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Classify(args) => commands::classify_one(args),
        Command::Tag(args) => commands::tag(args),
        Command::Suggest(args) => commands::suggest(args),
        Command::DumpRules(args) => commands::dump_rules(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}

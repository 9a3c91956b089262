//! Command-line entry point.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 input/corpus or
//! output error, 3 lexicon/gazetteer error, 4 emotion adapter error.
//! Diagnostics go to stderr; stdout carries only the run summary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::characters::co_occurrence_edges;
use crate::corpus::{read_corpus_file, segment_text, Delimiter, SegmentationConfig};
use crate::dataset::{
    aggregate, assemble_reporting, AggregateOptions, Analyzers, CorpusSummary, DatasetError,
    EmotionBackend, DEFAULT_WINDOW,
};
use crate::dialogue::{DialogueWeighting, QuoteStyle};
use crate::emotion::{AdapterConfig, Emotion};
use crate::lexicon::{self, CharacterGazetteer, EmotionLexicon, LexiconError, LexiconWarning};
use crate::parallel::default_jobs;
use crate::report::{self, render_chart, ChartKind, ChartSpec};
use crate::sentiment::{SentimentAnalyzer, SentimentRules};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LEXICON: i32 = 3;
pub const EXIT_ADAPTER: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "datafy",
    version,
    about = "Annotate a narrative paragraph by paragraph and chart the results"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline on a text file.
    Analyze(AnalyzeArgs),
    /// Re-render one chart from a saved summary.json.
    Chart(ChartArgs),
    /// Lexicon utilities.
    Lexicon {
        #[command(subcommand)]
        action: LexiconCommand,
    },
}

#[derive(Debug, Subcommand)]
enum LexiconCommand {
    /// Load a lexicon file and report diagnostics.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// UTF-8 plain-text narrative; paragraphs separated by blank lines.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Character gazetteer JSON.
    #[arg(long)]
    characters: Option<PathBuf>,
    /// Canonical name of the narrator; first-person pronouns resolve to it.
    #[arg(long)]
    narrator: Option<String>,
    #[arg(long)]
    valence_lexicon: Option<PathBuf>,
    #[arg(long)]
    emotion_lexicon: Option<PathBuf>,
    /// Theme pattern list for absurdity tagging.
    #[arg(long)]
    themes: Option<PathBuf>,
    /// Shell command of an external emotion classifier (NDJSON on stdio).
    #[arg(long)]
    emotion_adapter: Option<String>,
    /// Fall back to the lexicon baseline if the adapter fails.
    #[arg(long)]
    adapter_fallback: bool,
    #[arg(long, value_enum)]
    dialogue_weighting: Option<DialogueWeighting>,
    /// Rolling window for the absurdity series.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    window: Option<u64>,
    /// Worker threads for per-paragraph analysis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// JSON file whose keys mirror the flag names; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChartArgs {
    #[arg(long)]
    summary: PathBuf,
    #[arg(long, value_enum)]
    kind: ChartKind,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    title: Option<String>,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 500)]
    height: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LexiconType {
    Valence,
    Emotion,
    Themes,
    Gazetteer,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long = "type", value_enum)]
    kind: LexiconType,
    file: PathBuf,
}

/// Contents of `--config`. Keys that share a name with a flag mirror it;
/// the rest have no flag equivalent.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct ConfigFile {
    input: Option<PathBuf>,
    out: Option<PathBuf>,
    characters: Option<PathBuf>,
    narrator: Option<String>,
    valence_lexicon: Option<PathBuf>,
    emotion_lexicon: Option<PathBuf>,
    themes: Option<PathBuf>,
    emotion_adapter: Option<String>,
    adapter_fallback: Option<bool>,
    dialogue_weighting: Option<DialogueWeighting>,
    window: Option<usize>,
    jobs: Option<usize>,
    adapter_timeout_secs: Option<f64>,
    adapter_batch_size: Option<usize>,
    sentiment_rules: Option<SentimentRules>,
    quote_styles: Option<Vec<QuoteStyle>>,
    emotion_priority: Option<Vec<Emotion>>,
    delimiter: Option<Delimiter>,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Chart(args) => cmd_chart(args),
        Command::Lexicon {
            action: LexiconCommand::Validate(args),
        } => cmd_lexicon_validate(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn lexicon_failure(what: &str, e: LexiconError) -> Failure {
    Failure::new(EXIT_LEXICON, format!("{what}: {e}"))
}

fn warn_all(what: &str, warnings: &[LexiconWarning]) {
    for w in warnings {
        eprintln!("warning: {what}: {w}");
    }
}

/// Flag value, else config value (paths relative to the config file), else none.
fn pick_path(flag: Option<PathBuf>, cfg: Option<PathBuf>, base: &Path) -> Option<PathBuf> {
    flag.or_else(|| cfg.map(|p| if p.is_relative() { base.join(p) } else { p }))
}

/// Fully resolved analyze settings.
struct Settings {
    input: PathBuf,
    out: PathBuf,
    jobs: usize,
    aggregate: AggregateOptions,
    delimiter: Delimiter,
}

fn load_config(path: &Path) -> Result<ConfigFile, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| {
        Failure::new(
            EXIT_USAGE,
            format!("cannot read config {}: {e}", path.display()),
        )
    })?;
    let de = &mut serde_json::Deserializer::from_str(&src);
    serde_path_to_error::deserialize(de).map_err(|e| {
        Failure::new(
            EXIT_USAGE,
            format!(
                "invalid config {} at {}: {}",
                path.display(),
                e.path(),
                e.inner()
            ),
        )
    })
}

fn build_analyzers(
    args: &AnalyzeArgs,
    cfg: &ConfigFile,
    base: &Path,
) -> Result<Analyzers, Failure> {
    let mut analyzers = Analyzers::bundled();

    if let Some(path) = pick_path(
        args.valence_lexicon.clone(),
        cfg.valence_lexicon.clone(),
        base,
    ) {
        let loaded = lexicon::load_valence_lexicon(&path)
            .map_err(|e| lexicon_failure("valence lexicon", e))?;
        warn_all("valence lexicon", &loaded.warnings);
        analyzers.sentiment = SentimentAnalyzer::new(loaded.lexicon, SentimentRules::default());
    }
    if let Some(rules) = &cfg.sentiment_rules {
        analyzers.sentiment =
            SentimentAnalyzer::new(analyzers.sentiment.lexicon().clone(), rules.clone());
    }

    let mut emotion_lex = match pick_path(
        args.emotion_lexicon.clone(),
        cfg.emotion_lexicon.clone(),
        base,
    ) {
        Some(path) => {
            let loaded = lexicon::load_emotion_lexicon(&path)
                .map_err(|e| lexicon_failure("emotion lexicon", e))?;
            warn_all("emotion lexicon", &loaded.warnings);
            loaded.lexicon
        }
        None => EmotionLexicon::bundled(),
    };
    if let Some(order) = &cfg.emotion_priority {
        emotion_lex = emotion_lex.with_priority(order).map_err(|_| {
            Failure::new(
                EXIT_USAGE,
                "emotion-priority must list each of the seven labels once",
            )
        })?;
    }
    analyzers.emotion_lexicon = emotion_lex;

    if let Some(path) = pick_path(args.themes.clone(), cfg.themes.clone(), base) {
        analyzers.themes =
            lexicon::load_theme_lexicon(&path).map_err(|e| lexicon_failure("theme lexicon", e))?;
    }

    let mut gazetteer = match pick_path(args.characters.clone(), cfg.characters.clone(), base) {
        Some(path) => {
            lexicon::load_gazetteer(&path).map_err(|e| lexicon_failure("gazetteer", e))?
        }
        None => CharacterGazetteer::bundled(),
    };
    if let Some(name) = args.narrator.clone().or_else(|| cfg.narrator.clone()) {
        gazetteer = gazetteer
            .with_narrator(&name)
            .map_err(|e| lexicon_failure("gazetteer", e))?;
    }
    analyzers.gazetteer = gazetteer;

    if let Some(styles) = &cfg.quote_styles {
        analyzers.quote_styles = styles.clone();
    }

    if let Some(command) = args
        .emotion_adapter
        .clone()
        .or_else(|| cfg.emotion_adapter.clone())
    {
        let mut config = AdapterConfig::new(command);
        if let Some(secs) = cfg.adapter_timeout_secs {
            if !(secs.is_finite() && secs > 0.0) {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "adapter-timeout-secs must be positive",
                ));
            }
            config.timeout = Duration::from_secs_f64(secs);
        }
        if let Some(n) = cfg.adapter_batch_size {
            config.batch_size = n.max(1);
        }
        analyzers.emotion = EmotionBackend::Adapter {
            config,
            fallback: args.adapter_fallback || cfg.adapter_fallback.unwrap_or(false),
        };
    }
    Ok(analyzers)
}

fn resolve_settings(
    args: &AnalyzeArgs,
    cfg: &ConfigFile,
    base: &Path,
) -> Result<Settings, Failure> {
    let usage = || {
        let mut cmd = Cli::command();
        cmd.build();
        let sub = cmd
            .find_subcommand_mut("analyze")
            .expect("analyze subcommand");
        sub.render_usage().to_string()
    };
    let input = pick_path(args.input.clone(), cfg.input.clone(), base)
        .ok_or_else(|| Failure::new(EXIT_USAGE, format!("--input is required\n\n{}", usage())))?;
    let out = pick_path(args.out.clone(), cfg.out.clone(), base)
        .ok_or_else(|| Failure::new(EXIT_USAGE, format!("--out is required\n\n{}", usage())))?;
    let window = args
        .window
        .map(|w| w as usize)
        .or(cfg.window)
        .unwrap_or(DEFAULT_WINDOW);
    let jobs = args
        .jobs
        .map(|j| j as usize)
        .or(cfg.jobs)
        .unwrap_or_else(default_jobs);
    if window == 0 || jobs == 0 {
        return Err(Failure::new(
            EXIT_USAGE,
            "window and jobs must be at least 1",
        ));
    }
    Ok(Settings {
        input,
        out,
        jobs,
        aggregate: AggregateOptions {
            window,
            weighting: args
                .dialogue_weighting
                .or(cfg.dialogue_weighting)
                .unwrap_or_default(),
        },
        delimiter: cfg.delimiter.unwrap_or_default(),
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let (cfg, base) = match &args.config {
        Some(path) => (
            load_config(path)?,
            path.parent().map(Path::to_path_buf).unwrap_or_default(),
        ),
        None => (ConfigFile::default(), PathBuf::new()),
    };
    let settings = resolve_settings(&args, &cfg, &base)?;
    let analyzers = build_analyzers(&args, &cfg, &base)?;

    let raw =
        read_corpus_file(&settings.input).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    let paragraphs = segment_text(
        &raw,
        SegmentationConfig {
            delimiter: settings.delimiter,
        },
    );
    if paragraphs.is_empty() {
        return Err(Failure::new(
            EXIT_INPUT,
            format!("{} contains no paragraphs", settings.input.display()),
        ));
    }

    let (records, fell_back) =
        assemble_reporting(&paragraphs, &analyzers, settings.jobs).map_err(|e| match e {
            DatasetError::Adapter(e) => Failure::new(EXIT_ADAPTER, e.to_string()),
            other => Failure::new(EXIT_INPUT, other.to_string()),
        })?;
    if let Some(e) = fell_back {
        eprintln!("warning: emotion adapter failed ({e}); using the lexicon baseline");
    }
    let summary = aggregate(&records, settings.aggregate)
        .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;

    let out = &settings.out;
    std::fs::create_dir_all(out)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot create {}: {e}", out.display())))?;
    let io_fail = |e: report::ReportError| Failure::new(EXIT_INPUT, e.to_string());
    report::write_records_csv(&records, &out.join("records.csv")).map_err(io_fail)?;
    report::write_records_json(&records, &out.join("records.json")).map_err(io_fail)?;
    let summary_text = report::summary_json(&summary);
    report::write_atomic(&out.join("summary.json"), summary_text.as_bytes()).map_err(io_fail)?;
    // charts come from the saved summary so `chart` can reproduce them exactly
    let saved = report::parse_summary_json(&summary_text).expect("summary JSON round-trips");
    let edges = co_occurrence_edges(records.iter().map(|r| &r.characters));
    report::write_edges_csv(&edges, &out.join("interactions.csv")).map_err(io_fail)?;
    for kind in ChartKind::ALL {
        let svg = render_chart(&ChartSpec::from_summary(kind, &saved))
            .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
        report::write_atomic(&out.join(kind.file_name()), svg.as_bytes()).map_err(io_fail)?;
    }

    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(summary_table(&summary, out).as_bytes());
    Ok(())
}

fn pct(x: f64) -> String {
    format!("{:.1}%", x * 100.0)
}

fn summary_table(s: &CorpusSummary, out: &Path) -> String {
    let n = s.n_paragraphs as f64;
    let mut emotions: Vec<(&Emotion, &usize)> =
        s.emotion_freq.iter().filter(|(_, c)| **c > 0).collect();
    emotions.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let emotions: Vec<String> = emotions
        .iter()
        .map(|(e, c)| format!("{e} {}", pct(**c as f64 / n)))
        .collect();
    let mut characters: Vec<(&String, &usize)> = s.interaction_counts.iter().collect();
    characters.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let characters: Vec<String> = characters
        .iter()
        .take(5)
        .map(|(name, c)| format!("{name} ({c})"))
        .collect();

    let mut t = String::new();
    let _ = writeln!(t, "{:<22}{}", "paragraphs", s.n_paragraphs);
    let _ = writeln!(t, "{:<22}{}", "emotions", emotions.join(", "));
    let _ = writeln!(
        t,
        "{:<22}{:.2} / {:.2}",
        "sentiment mean / std", s.sentiment_mean, s.sentiment_std
    );
    let _ = writeln!(
        t,
        "{:<22}{}",
        "top characters",
        if characters.is_empty() {
            "-".into()
        } else {
            characters.join(", ")
        }
    );
    let _ = writeln!(
        t,
        "{:<22}{} ({})",
        "absurdity tags",
        s.absurd_count,
        pct(s.absurd_ratio)
    );
    let weighting = match s.dialogue_weighting {
        DialogueWeighting::Paragraphs => "by paragraph",
        DialogueWeighting::Characters => "by character",
    };
    let _ = writeln!(
        t,
        "{:<22}{} / {} ({weighting})",
        "dialogue / narrative",
        pct(s.dialogue_share),
        pct(s.narrative_share)
    );
    let _ = writeln!(t, "{:<22}{}", "output", out.display());
    t
}

fn cmd_chart(args: ChartArgs) -> CmdResult {
    let summary = report::read_summary_json(&args.summary)
        .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    let mut spec = ChartSpec::from_summary(args.kind, &summary);
    spec.width = args.width;
    spec.height = args.height;
    if let Some(title) = args.title {
        spec.title = title;
    }
    let svg = render_chart(&spec).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    report::write_atomic(&args.out, svg.as_bytes())
        .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))
}

fn cmd_lexicon_validate(args: ValidateArgs) -> CmdResult {
    let path = &args.file;
    let fail = |e| lexicon_failure(&path.display().to_string(), e);
    let (count, warnings) = match args.kind {
        LexiconType::Valence => {
            let l = lexicon::load_valence_lexicon(path).map_err(fail)?;
            (l.lexicon.len(), l.warnings)
        }
        LexiconType::Emotion => {
            let l = lexicon::load_emotion_lexicon(path).map_err(fail)?;
            (l.lexicon.len(), l.warnings)
        }
        LexiconType::Themes => (
            lexicon::load_theme_lexicon(path).map_err(fail)?.len(),
            Vec::new(),
        ),
        LexiconType::Gazetteer => (
            lexicon::load_gazetteer(path)
                .map_err(fail)?
                .characters()
                .len(),
            Vec::new(),
        ),
    };
    warn_all(&path.display().to_string(), &warnings);
    println!("OK, {count} entries");
    Ok(())
}

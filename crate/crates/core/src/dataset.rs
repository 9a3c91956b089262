//! Runs every analyzer over the corpus and folds the records into corpus
//! statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{detect_mentions, interaction_counts, MentionSet};
use crate::corpus::Paragraph;
use crate::dialogue::{
    classify_dialogue, dialogue_proportion, DialogueInfo, DialogueWeighting, QuoteStyle,
};
use crate::emotion::{
    classify_baseline, classify_via_adapter, AdapterConfig, AdapterError, Emotion, EmotionResult,
};
use crate::lexicon::{CharacterGazetteer, EmotionLexicon, ThemeLexicon, ValenceLexicon};
use crate::parallel::map_ordered;
use crate::sentiment::{SentimentAnalyzer, SentimentRules, SentimentScore};
use crate::themes::{absurdity_series, tag_absurdity, ThemeTag};

pub const HIST_BINS: usize = 20;
pub const DEFAULT_WINDOW: usize = 10;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Adapter(#[from] AdapterError),
    #[error("cannot aggregate an empty corpus")]
    EmptyCorpus,
    #[error("rolling window must be at least 1")]
    ZeroWindow,
}

/// The joined annotation row for one paragraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParagraphRecord {
    pub paragraph: Paragraph,
    pub emotion: EmotionResult,
    pub sentiment: SentimentScore,
    pub characters: MentionSet,
    pub theme: ThemeTag,
    pub dialogue: DialogueInfo,
}

impl ParagraphRecord {
    pub fn index(&self) -> usize {
        self.paragraph.index
    }
}

#[derive(Debug, Clone)]
pub enum EmotionBackend {
    Baseline,
    Adapter {
        config: AdapterConfig,
        /// Use the baseline for the whole corpus if the adapter fails.
        fallback: bool,
    },
}

/// Every lexicon and rule set the pipeline needs, shared read-only.
#[derive(Debug, Clone)]
pub struct Analyzers {
    pub sentiment: SentimentAnalyzer,
    pub emotion_lexicon: EmotionLexicon,
    pub themes: ThemeLexicon,
    pub gazetteer: CharacterGazetteer,
    pub quote_styles: Vec<QuoteStyle>,
    pub emotion: EmotionBackend,
}

impl Analyzers {
    /// Bundled lexicons, default rules, baseline emotion classifier.
    pub fn bundled() -> Self {
        Analyzers {
            sentiment: SentimentAnalyzer::new(ValenceLexicon::bundled(), SentimentRules::default()),
            emotion_lexicon: EmotionLexicon::bundled(),
            themes: ThemeLexicon::bundled(),
            gazetteer: CharacterGazetteer::bundled(),
            quote_styles: QuoteStyle::DEFAULT.to_vec(),
            emotion: EmotionBackend::Baseline,
        }
    }

    /// Apply every analyzer except emotion.
    pub fn analyze(&self, paragraph: &Paragraph, emotion: EmotionResult) -> ParagraphRecord {
        let text = &paragraph.text;
        ParagraphRecord {
            paragraph: paragraph.clone(),
            emotion,
            sentiment: self.sentiment.score(text),
            characters: detect_mentions(text, &self.gazetteer),
            theme: tag_absurdity(text, &self.themes),
            dialogue: classify_dialogue(text, &self.quote_styles),
        }
    }
}

/// Build one record per paragraph, in paragraph order.
pub fn assemble(
    paragraphs: &[Paragraph],
    analyzers: &Analyzers,
    jobs: usize,
) -> Result<Vec<ParagraphRecord>, DatasetError> {
    assemble_reporting(paragraphs, analyzers, jobs).map(|(records, _)| records)
}

/// Like [`assemble`], also returning the adapter error that triggered a
/// fallback to the baseline, if any.
pub fn assemble_reporting(
    paragraphs: &[Paragraph],
    analyzers: &Analyzers,
    jobs: usize,
) -> Result<(Vec<ParagraphRecord>, Option<AdapterError>), DatasetError> {
    let (adapter_results, fell_back) = match &analyzers.emotion {
        EmotionBackend::Baseline => (None, None),
        EmotionBackend::Adapter { config, fallback } => {
            let batch: Vec<(usize, &str)> = paragraphs
                .iter()
                .map(|p| (p.index, p.text.as_str()))
                .collect();
            match classify_via_adapter(&batch, config, &analyzers.emotion_lexicon) {
                Ok(results) => (Some(results), None),
                Err(e) if *fallback => (None, Some(e)),
                Err(e) => return Err(e.into()),
            }
        }
    };

    let records = match adapter_results {
        Some(emotions) => {
            let pairs: Vec<(&Paragraph, EmotionResult)> = paragraphs.iter().zip(emotions).collect();
            map_ordered(&pairs, jobs, |(p, e)| analyzers.analyze(p, e.clone()))
        }
        None => map_ordered(paragraphs, jobs, |p| {
            analyzers.analyze(p, classify_baseline(&p.text, &analyzers.emotion_lexicon))
        }),
    };
    Ok((records, fell_back))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AggregateOptions {
    pub window: usize,
    pub weighting: DialogueWeighting,
}

impl Default for AggregateOptions {
    fn default() -> Self {
        AggregateOptions {
            window: DEFAULT_WINDOW,
            weighting: DialogueWeighting::Paragraphs,
        }
    }
}

/// Corpus-level statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSummary {
    pub n_paragraphs: usize,
    /// Paragraph count per label; all seven labels present.
    pub emotion_freq: BTreeMap<Emotion, usize>,
    pub sentiment_mean: f64,
    /// Population standard deviation (divisor N).
    pub sentiment_std: f64,
    /// Counts over 20 equal bins spanning [-1, 1]; bins are [lo, hi) except
    /// the last, which also holds +1.
    pub sentiment_hist: Vec<usize>,
    pub interaction_counts: BTreeMap<String, usize>,
    pub absurd_count: usize,
    pub absurd_ratio: f64,
    pub dialogue_share: f64,
    pub narrative_share: f64,
    pub dialogue_weighting: DialogueWeighting,
    pub absurdity_window: usize,
    /// Rolling mean of absurdity tags, one value per paragraph index.
    pub absurdity_series: Vec<f64>,
}

/// Histogram bin for a compound score in [-1, 1].
pub fn hist_bin(compound: f64) -> usize {
    let width = 2.0 / HIST_BINS as f64;
    let idx = ((compound + 1.0) / width).floor();
    if idx <= 0.0 {
        0
    } else {
        (idx as usize).min(HIST_BINS - 1)
    }
}

pub fn aggregate(
    records: &[ParagraphRecord],
    opts: AggregateOptions,
) -> Result<CorpusSummary, DatasetError> {
    if records.is_empty() {
        return Err(DatasetError::EmptyCorpus);
    }
    if opts.window == 0 {
        return Err(DatasetError::ZeroWindow);
    }
    let n = records.len();

    let mut emotion_freq: BTreeMap<Emotion, usize> = Emotion::ALL.iter().map(|e| (*e, 0)).collect();
    let mut hist = vec![0usize; HIST_BINS];
    let mut sum = 0.0;
    for r in records {
        *emotion_freq.entry(r.emotion.label).or_default() += 1;
        hist[hist_bin(r.sentiment.compound)] += 1;
        sum += r.sentiment.compound;
    }
    let mean = sum / n as f64;
    let var = records
        .iter()
        .map(|r| (r.sentiment.compound - mean).powi(2))
        .sum::<f64>()
        / n as f64;

    let tags: Vec<u8> = records.iter().map(|r| r.theme.tag).collect();
    let absurd_count = tags.iter().filter(|&&t| t == 1).count();
    let series = absurdity_series(&tags, opts.window).map_err(|_| DatasetError::ZeroWindow)?;
    let (dialogue_share, narrative_share) =
        dialogue_proportion(records.iter().map(|r| &r.dialogue), opts.weighting)
            .map_err(|_| DatasetError::EmptyCorpus)?;

    Ok(CorpusSummary {
        n_paragraphs: n,
        emotion_freq,
        sentiment_mean: mean,
        sentiment_std: var.sqrt(),
        sentiment_hist: hist,
        interaction_counts: interaction_counts(records.iter().map(|r| &r.characters)),
        absurd_count,
        absurd_ratio: absurd_count as f64 / n as f64,
        dialogue_share,
        narrative_share,
        dialogue_weighting: opts.weighting,
        absurdity_window: opts.window,
        absurdity_series: series.into_iter().map(|(_, v)| v).collect(),
    })
}

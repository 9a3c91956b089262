//! Turn a narrative text into a per-paragraph annotation dataset: emotion,
//! sentiment, character mentions, absurdity tags and dialogue share, plus
//! corpus statistics and SVG charts.

mod text;

pub mod characters;
pub mod cli;
pub mod corpus;
pub mod dataset;
pub mod dialogue;
pub mod emotion;
pub mod lexicon;
pub mod parallel;
pub mod report;
pub mod sentiment;
pub mod themes;

pub use characters::{detect_mentions, Mention, MentionSet};
pub use corpus::{segment_text, Paragraph, SegmentationConfig};
pub use dataset::{
    aggregate, assemble, AggregateOptions, Analyzers, CorpusSummary, ParagraphRecord,
};
pub use dialogue::{classify_dialogue, dialogue_proportion, DialogueInfo, DialogueWeighting};
pub use emotion::{classify_baseline, classify_via_adapter, Emotion, EmotionResult};
pub use sentiment::{score_paragraph, SentimentRules, SentimentScore};
pub use themes::{absurdity_series, tag_absurdity, ThemeTag};

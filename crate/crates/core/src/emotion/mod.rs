//! One emotion label per paragraph, from the lexicon baseline or an
//! external classifier process.

mod adapter;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use crate::lexicon::Emotion;
use crate::lexicon::EmotionLexicon;
use crate::text::words;
pub use adapter::{
    classify_via_adapter, AdapterConfig, AdapterError, AdapterRequest, AdapterResponse,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionSource {
    Baseline,
    Adapter,
}

impl EmotionSource {
    pub fn as_str(self) -> &'static str {
        match self {
            EmotionSource::Baseline => "baseline",
            EmotionSource::Adapter => "adapter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionResult {
    pub label: Emotion,
    pub scores: BTreeMap<Emotion, f64>,
    pub source: EmotionSource,
}

/// Highest-scoring label, ties broken by the lexicon's priority order.
/// All-zero (or empty) scores give `neutral`.
pub fn argmax(scores: &BTreeMap<Emotion, f64>, lex: &EmotionLexicon) -> Emotion {
    scores
        .iter()
        .filter(|(_, &s)| s > 0.0)
        .min_by(|a, b| {
            b.1.partial_cmp(a.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(lex.rank(*a.0).cmp(&lex.rank(*b.0)))
        })
        .map_or(Emotion::Neutral, |(e, _)| *e)
}

/// Count word hits per label and pick the winner.
pub fn classify_baseline(text: &str, lex: &EmotionLexicon) -> EmotionResult {
    let mut scores: BTreeMap<Emotion, f64> = Emotion::ALL.iter().map(|e| (*e, 0.0)).collect();
    for word in words(text) {
        if let Some(labels) = lex.get(&word.folded()) {
            for label in labels {
                *scores.entry(*label).or_default() += 1.0;
            }
        }
    }
    EmotionResult {
        label: argmax(&scores, lex),
        scores,
        source: EmotionSource::Baseline,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> EmotionLexicon {
        EmotionLexicon::parse("grief\tsadness\ntears\tsadness\nsmile\tjoy\n")
            .unwrap()
            .lexicon
    }

    #[test]
    fn no_hits_is_neutral() {
        let r = classify_baseline("The sky was blue.", &lex());
        assert_eq!(r.label, Emotion::Neutral);
        assert!(r.scores.values().all(|&s| s == 0.0));
        assert_eq!(r.source, EmotionSource::Baseline);
    }

    #[test]
    fn majority_wins() {
        let r = classify_baseline("Grief, then tears, then a smile.", &lex());
        assert_eq!(r.label, Emotion::Sadness);
        assert_eq!(r.scores[&Emotion::Sadness], 2.0);
        assert_eq!(r.scores[&Emotion::Joy], 1.0);
    }

    #[test]
    fn tie_uses_priority() {
        let r = classify_baseline("grief and a smile", &lex());
        assert_eq!(r.label, Emotion::Sadness);
        let mut order = crate::lexicon::DEFAULT_PRIORITY;
        order.swap(0, 5); // joy first
        let joy_first = lex().with_priority(&order).unwrap();
        assert_eq!(
            classify_baseline("grief and a smile", &joy_first).label,
            Emotion::Joy
        );
    }

    #[test]
    fn matching_is_case_insensitive_and_word_bounded() {
        let r = classify_baseline("GRIEF griefs", &lex());
        assert_eq!(r.scores[&Emotion::Sadness], 1.0);
    }
}

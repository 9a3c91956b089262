//! Rule-based paragraph sentiment.
//!
//! Each token gets its lexicon valence, adjusted by the heuristics in
//! [`SentimentRules`]: ALL-CAPS emphasis, booster words and negators in a
//! short look-back window, a contrastive pivot ("but"), and `!` emphasis.
//! The adjusted valences are summed and squashed into a compound score
//! `s / sqrt(s^2 + alpha)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::lexicon::ValenceLexicon;
use crate::text::fold;

/// Heuristic constants and word lists. Every field has a default, so a
/// config file may override any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SentimentRules {
    pub alpha: f64,
    pub booster_increment: f64,
    pub negation_scalar: f64,
    /// How many preceding tokens are inspected for boosters and negators.
    pub lookback_window: usize,
    /// Booster damping by distance (1, 2, 3...); the last value repeats.
    pub lookback_damping: Vec<f64>,
    pub caps_increment: f64,
    pub exclamation_increment: f64,
    pub exclamation_cap: usize,
    pub contrast_words: Vec<String>,
    pub contrast_before: f64,
    pub contrast_after: f64,
    pub negators: Vec<String>,
    pub boosters_up: Vec<String>,
    pub boosters_down: Vec<String>,
}

const NEGATORS: &[&str] = &[
    "aint",
    "arent",
    "cannot",
    "cant",
    "couldnt",
    "darent",
    "didnt",
    "doesnt",
    "ain't",
    "aren't",
    "can't",
    "couldn't",
    "daren't",
    "didn't",
    "doesn't",
    "dont",
    "hadnt",
    "hasnt",
    "havent",
    "isnt",
    "mightnt",
    "mustnt",
    "neither",
    "don't",
    "hadn't",
    "hasn't",
    "haven't",
    "isn't",
    "mightn't",
    "mustn't",
    "neednt",
    "needn't",
    "never",
    "none",
    "nope",
    "nor",
    "not",
    "nothing",
    "nowhere",
    "oughtnt",
    "shant",
    "shouldnt",
    "wasnt",
    "werent",
    "oughtn't",
    "shan't",
    "shouldn't",
    "wasn't",
    "weren't",
    "without",
    "wont",
    "wouldnt",
    "won't",
    "wouldn't",
    "rarely",
    "seldom",
    "despite",
];

const BOOSTERS_UP: &[&str] = &[
    "absolutely",
    "amazingly",
    "awfully",
    "completely",
    "considerably",
    "decidedly",
    "deeply",
    "enormously",
    "entirely",
    "especially",
    "exceptionally",
    "extremely",
    "fully",
    "greatly",
    "highly",
    "hugely",
    "incredibly",
    "intensely",
    "more",
    "most",
    "particularly",
    "purely",
    "quite",
    "really",
    "remarkably",
    "so",
    "substantially",
    "thoroughly",
    "totally",
    "tremendously",
    "unbelievably",
    "unusually",
    "utterly",
    "very",
];

const BOOSTERS_DOWN: &[&str] = &[
    "almost",
    "barely",
    "hardly",
    "kinda",
    "less",
    "little",
    "marginally",
    "occasionally",
    "partly",
    "scarcely",
    "slightly",
    "somewhat",
    "sorta",
];

fn owned(words: &[&str]) -> Vec<String> {
    words.iter().map(|w| (*w).to_owned()).collect()
}

impl Default for SentimentRules {
    fn default() -> Self {
        SentimentRules {
            alpha: 15.0,
            booster_increment: 0.293,
            negation_scalar: -0.74,
            lookback_window: 3,
            lookback_damping: vec![1.0, 0.95, 0.9],
            caps_increment: 0.733,
            exclamation_increment: 0.292,
            exclamation_cap: 4,
            contrast_words: vec!["but".to_owned()],
            contrast_before: 0.5,
            contrast_after: 1.5,
            negators: owned(NEGATORS),
            boosters_up: owned(BOOSTERS_UP),
            boosters_down: owned(BOOSTERS_DOWN),
        }
    }
}

impl SentimentRules {
    fn damping(&self, distance: usize) -> f64 {
        self.lookback_damping
            .get(distance - 1)
            .or(self.lookback_damping.last())
            .copied()
            .unwrap_or(1.0)
    }
}

/// Compound score plus positive/neutral/negative mass proportions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub compound: f64,
    pub pos: f64,
    pub neu: f64,
    pub neg: f64,
}

/// A whitespace-delimited token prepared for valence lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffectToken {
    pub surface: String,
    /// Surface with edge punctuation stripped, lowercased, apostrophes folded.
    pub lower: String,
    /// At least two letters and none of them lowercase.
    pub all_caps: bool,
    /// Non-alphanumeric characters at the end of the surface.
    pub trailing: String,
}

impl AffectToken {
    fn has_letters(&self) -> bool {
        self.lower.chars().any(char::is_alphabetic)
    }
}

pub fn tokenize_affect(text: &str) -> Vec<AffectToken> {
    text.split_whitespace()
        .map(|surface| {
            let core_end = surface
                .char_indices()
                .rev()
                .find(|(_, c)| c.is_alphanumeric())
                .map_or(0, |(i, c)| i + c.len_utf8());
            let core_start = surface[..core_end]
                .char_indices()
                .find(|(_, c)| c.is_alphanumeric())
                .map_or(core_end, |(i, _)| i);
            let core = &surface[core_start..core_end];
            let letters: Vec<char> = core.chars().filter(|c| c.is_alphabetic()).collect();
            AffectToken {
                surface: surface.to_owned(),
                lower: fold(core),
                all_caps: letters.len() >= 2 && !letters.iter().any(|c| c.is_lowercase()),
                trailing: surface[core_end..].to_owned(),
            }
        })
        .collect()
}

/// A valence lexicon bundled with the rules that adjust it.
#[derive(Debug, Clone)]
pub struct SentimentAnalyzer {
    lexicon: ValenceLexicon,
    rules: SentimentRules,
    negators: HashSet<String>,
    boosters_up: HashSet<String>,
    boosters_down: HashSet<String>,
    contrast: HashSet<String>,
}

impl SentimentAnalyzer {
    pub fn new(lexicon: ValenceLexicon, rules: SentimentRules) -> Self {
        let set = |words: &[String]| words.iter().map(|w| fold(w)).collect::<HashSet<_>>();
        SentimentAnalyzer {
            negators: set(&rules.negators),
            boosters_up: set(&rules.boosters_up),
            boosters_down: set(&rules.boosters_down),
            contrast: set(&rules.contrast_words),
            lexicon,
            rules,
        }
    }

    pub fn lexicon(&self) -> &ValenceLexicon {
        &self.lexicon
    }

    pub fn rules(&self) -> &SentimentRules {
        &self.rules
    }

    fn is_negator(&self, lower: &str) -> bool {
        self.negators.contains(lower) || lower.contains("n't")
    }

    fn booster(&self, lower: &str) -> Option<f64> {
        if self.boosters_up.contains(lower) {
            Some(self.rules.booster_increment)
        } else if self.boosters_down.contains(lower) {
            Some(-self.rules.booster_increment)
        } else {
            None
        }
    }

    /// Adjusted valence of each token, before the contrast pivot.
    fn token_valences(&self, tokens: &[AffectToken]) -> Vec<f64> {
        let rules = &self.rules;
        let caps_active = {
            let mut with_letters = tokens.iter().filter(|t| t.has_letters()).peekable();
            let any_caps = tokens.iter().any(|t| t.all_caps);
            with_letters.peek().is_some() && any_caps && !with_letters.all(|t| t.all_caps)
        };
        let signed = |v: f64, amount: f64| if v > 0.0 { amount } else { -amount };

        tokens
            .iter()
            .enumerate()
            .map(|(i, tok)| {
                if self.booster(&tok.lower).is_some() {
                    return 0.0;
                }
                let Some(mut valence) = self.lexicon.get(&tok.lower) else {
                    return 0.0;
                };
                if tok.all_caps && caps_active {
                    valence += signed(valence, rules.caps_increment);
                }
                for distance in 1..=rules.lookback_window.min(i) {
                    let prev = &tokens[i - distance];
                    if self.lexicon.contains(&prev.lower) {
                        continue;
                    }
                    if let Some(inc) = self.booster(&prev.lower) {
                        let mut scalar = if valence < 0.0 { -inc } else { inc };
                        if prev.all_caps && caps_active {
                            scalar += signed(valence, rules.caps_increment);
                        }
                        valence += scalar * rules.damping(distance);
                    }
                    if self.is_negator(&prev.lower) {
                        valence *= rules.negation_scalar;
                    }
                }
                valence
            })
            .collect()
    }

    pub fn score(&self, text: &str) -> SentimentScore {
        let tokens = tokenize_affect(text);
        if tokens.is_empty() {
            return SentimentScore::default();
        }
        let rules = &self.rules;
        let mut valences = self.token_valences(&tokens);

        if let Some(pivot) = tokens.iter().position(|t| self.contrast.contains(&t.lower)) {
            for (i, v) in valences.iter_mut().enumerate() {
                if i < pivot {
                    *v *= rules.contrast_before;
                } else if i > pivot {
                    *v *= rules.contrast_after;
                }
            }
        }

        let bangs = text.chars().filter(|&c| c == '!').count();
        let emphasis = bangs.min(rules.exclamation_cap) as f64 * rules.exclamation_increment;

        let mut sum: f64 = valences.iter().sum();
        if sum > 0.0 {
            sum += emphasis;
        } else if sum < 0.0 {
            sum -= emphasis;
        }
        let compound = (sum / (sum * sum + rules.alpha).sqrt()).clamp(-1.0, 1.0);

        let (mut pos, mut neg, mut neu) = (0.0f64, 0.0f64, 0usize);
        for &v in &valences {
            if v > 0.0 {
                pos += v + 1.0;
            } else if v < 0.0 {
                neg += v - 1.0;
            } else {
                neu += 1;
            }
        }
        if pos > neg.abs() {
            pos += emphasis;
        } else if pos < neg.abs() {
            neg -= emphasis;
        }
        let total = pos + neg.abs() + neu as f64;
        SentimentScore {
            compound,
            pos: pos / total,
            neu: neu as f64 / total,
            neg: neg.abs() / total,
        }
    }
}

/// Score one paragraph.
pub fn score_paragraph(text: &str, lex: &ValenceLexicon, rules: &SentimentRules) -> SentimentScore {
    SentimentAnalyzer::new(lex.clone(), rules.clone()).score(text)
}

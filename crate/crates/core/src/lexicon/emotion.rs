use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::valence::check_token;
use super::{content_lines, LexiconError, LexiconWarning, Loaded};

const BUNDLED: &str = include_str!("../../data/emotion.tsv");

/// The fixed seven-label emotion set: six affects plus `neutral`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emotion {
    Sadness,
    Joy,
    Anger,
    Fear,
    Surprise,
    Disgust,
    Neutral,
}

impl Emotion {
    pub const ALL: [Emotion; 7] = [
        Emotion::Sadness,
        Emotion::Joy,
        Emotion::Anger,
        Emotion::Fear,
        Emotion::Surprise,
        Emotion::Disgust,
        Emotion::Neutral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Emotion::Sadness => "sadness",
            Emotion::Joy => "joy",
            Emotion::Anger => "anger",
            Emotion::Fear => "fear",
            Emotion::Surprise => "surprise",
            Emotion::Disgust => "disgust",
            Emotion::Neutral => "neutral",
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLabel(pub String);

impl fmt::Display for UnknownLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown label '{}'", self.0)
    }
}

impl std::error::Error for UnknownLabel {}

impl FromStr for Emotion {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Emotion::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| UnknownLabel(s.to_owned()))
    }
}

/// Tie-break order: earlier wins.
pub const DEFAULT_PRIORITY: [Emotion; 7] = [
    Emotion::Sadness,
    Emotion::Anger,
    Emotion::Fear,
    Emotion::Disgust,
    Emotion::Surprise,
    Emotion::Joy,
    Emotion::Neutral,
];

/// Lowercase token to the set of affect labels it signals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionLexicon {
    entries: HashMap<String, BTreeSet<Emotion>>,
    /// rank[label as usize] = position in the priority order
    rank: [usize; 7],
}

impl Default for EmotionLexicon {
    fn default() -> Self {
        EmotionLexicon {
            entries: HashMap::new(),
            rank: rank_of(&DEFAULT_PRIORITY),
        }
    }
}

fn rank_of(order: &[Emotion; 7]) -> [usize; 7] {
    let mut rank = [0; 7];
    for (pos, e) in order.iter().enumerate() {
        rank[*e as usize] = pos;
    }
    rank
}

impl EmotionLexicon {
    /// Parse `token<TAB>label` rows; repeated tokens accumulate labels.
    pub fn parse(src: &str) -> Result<Loaded<Self>, LexiconError> {
        let mut lex = EmotionLexicon::default();
        let mut warnings = Vec::new();
        for (line, content) in content_lines(src) {
            let mut cols = content.split('\t');
            let token = cols.next().unwrap_or_default().trim();
            let (Some(label), None) = (cols.next(), cols.next()) else {
                return Err(LexiconError::line(line, "expected token<TAB>label"));
            };
            let token = check_token(line, token)?;
            let label = label.trim();
            let emotion: Emotion = label
                .parse()
                .map_err(|e: UnknownLabel| LexiconError::line(line, e.to_string()))?;
            if emotion == Emotion::Neutral {
                return Err(LexiconError::line(
                    line,
                    "label 'neutral' cannot be assigned to a token",
                ));
            }
            if !lex
                .entries
                .entry(token.clone())
                .or_default()
                .insert(emotion)
            {
                warnings.push(LexiconWarning {
                    line,
                    message: format!("duplicate row '{token}\t{label}'"),
                });
            }
        }
        Ok(Loaded {
            lexicon: lex,
            warnings,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED)
            .expect("bundled emotion lexicon is valid")
            .lexicon
    }

    /// Replace the tie-break order; must be a permutation of all seven labels.
    pub fn with_priority(mut self, order: &[Emotion]) -> Result<Self, LexiconError> {
        let distinct: BTreeSet<_> = order.iter().collect();
        if order.len() != 7 || distinct.len() != 7 {
            return Err(LexiconError::line(
                0,
                "priority must list each of the seven labels exactly once",
            ));
        }
        let arr: [Emotion; 7] = order.try_into().expect("length checked");
        self.rank = rank_of(&arr);
        Ok(self)
    }

    pub fn priority(&self) -> [Emotion; 7] {
        let mut order = Emotion::ALL;
        order.sort_by_key(|e| self.rank[*e as usize]);
        order
    }

    /// Position of `e` in the tie-break order (0 = wins ties).
    pub fn rank(&self, e: Emotion) -> usize {
        self.rank[e as usize]
    }

    pub fn get(&self, token: &str) -> Option<&BTreeSet<Emotion>> {
        self.entries.get(token)
    }

    /// Number of distinct tokens.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<(&String, Emotion)> = self
            .entries
            .iter()
            .flat_map(|(k, set)| set.iter().map(move |e| (k, *e)))
            .collect();
        rows.sort();
        rows.iter().map(|(k, e)| format!("{k}\t{e}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let lex = EmotionLexicon::parse("grief\tsadness\n").unwrap().lexicon;
        assert_eq!(
            lex.get("grief").unwrap(),
            &BTreeSet::from([Emotion::Sadness])
        );
    }

    #[test]
    fn multi_label_union() {
        let lex = EmotionLexicon::parse("tears\tsadness\ntears\tfear\n")
            .unwrap()
            .lexicon;
        assert_eq!(
            lex.get("tears").unwrap(),
            &BTreeSet::from([Emotion::Sadness, Emotion::Fear])
        );
    }

    #[test]
    fn unknown_label() {
        let err = EmotionLexicon::parse("x\tboredom\n").unwrap_err();
        assert_eq!(err.to_string(), "line 1: unknown label 'boredom'");
    }

    #[test]
    fn neutral_not_assignable() {
        assert!(EmotionLexicon::parse("calm\tneutral\n").is_err());
    }

    #[test]
    fn priority_must_be_permutation() {
        let lex = EmotionLexicon::default();
        assert_eq!(lex.priority(), DEFAULT_PRIORITY);
        assert!(lex.clone().with_priority(&[Emotion::Joy]).is_err());
        let mut rev = DEFAULT_PRIORITY;
        rev.reverse();
        let lex = lex.with_priority(&rev).unwrap();
        assert_eq!(lex.rank(Emotion::Neutral), 0);
        assert_eq!(lex.priority(), rev);
    }

    #[test]
    fn bundled_round_trips() {
        let lex = EmotionLexicon::bundled();
        assert!(lex.len() > 100);
        let again = EmotionLexicon::parse(&lex.to_tsv()).unwrap().lexicon;
        assert_eq!(again, lex);
    }
}

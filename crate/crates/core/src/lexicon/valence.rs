use std::collections::HashMap;

use super::{content_lines, LexiconError, LexiconWarning, Loaded};
use crate::text::fold;

pub const VALENCE_MIN: f64 = -4.0;
pub const VALENCE_MAX: f64 = 4.0;

const BUNDLED: &str = include_str!("../../data/valence.tsv");

/// Lowercase token to signed valence on a [-4, +4] scale.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValenceLexicon {
    entries: HashMap<String, f64>,
}

impl ValenceLexicon {
    /// Parse `token<TAB>valence` lines. Columns after the second are ignored,
    /// so multi-column affect lexicons load unchanged.
    pub fn parse(src: &str) -> Result<Loaded<Self>, LexiconError> {
        let mut entries = HashMap::new();
        let mut warnings = Vec::new();
        for (line, content) in content_lines(src) {
            let mut cols = content.split('\t');
            let token = cols.next().unwrap_or_default().trim();
            let Some(raw_value) = cols.next() else {
                return Err(LexiconError::line(line, "expected token<TAB>valence"));
            };
            let token = check_token(line, token)?;
            let value: f64 = raw_value
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| LexiconError::line(line, "invalid valence"))?;
            if !(VALENCE_MIN..=VALENCE_MAX).contains(&value) {
                return Err(LexiconError::line(
                    line,
                    format!("valence {value} outside [-4, 4]"),
                ));
            }
            if entries.insert(token.clone(), value).is_some() {
                warnings.push(LexiconWarning {
                    line,
                    message: format!("duplicate token '{token}', last entry wins"),
                });
            }
        }
        Ok(Loaded {
            lexicon: ValenceLexicon { entries },
            warnings,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED)
            .expect("bundled valence lexicon is valid")
            .lexicon
    }

    pub fn from_entries<I, S>(entries: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut tsv = String::new();
        for (k, v) in entries {
            tsv.push_str(k.as_ref());
            tsv.push('\t');
            tsv.push_str(&v.to_string());
            tsv.push('\n');
        }
        Ok(Self::parse(&tsv)?.lexicon)
    }

    /// Valence of an already-folded token.
    pub fn get(&self, token: &str) -> Option<f64> {
        self.entries.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted TSV rendering; reparses to an identical lexicon.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<_> = self.entries.iter().collect();
        rows.sort_by(|a, b| a.0.cmp(b.0));
        rows.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }
}

/// Tokens are folded to lowercase and must not contain whitespace.
pub(super) fn check_token(line: usize, token: &str) -> Result<String, LexiconError> {
    if token.is_empty() {
        return Err(LexiconError::line(line, "empty token"));
    }
    if token.chars().any(char::is_whitespace) {
        return Err(LexiconError::line(
            line,
            format!("token '{token}' contains whitespace"),
        ));
    }
    Ok(fold(token))
}

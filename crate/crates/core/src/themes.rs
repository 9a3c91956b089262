//! Keyword tagging of existential/absurdist vocabulary.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::ThemeLexicon;
use crate::text::words;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThemeMatch {
    pub pattern: String,
    /// Char offset of the first matched word.
    pub offset: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThemeTag {
    /// 1 when any pattern matched, else 0.
    pub tag: u8,
    pub matched: Vec<ThemeMatch>,
}

impl ThemeTag {
    pub fn is_tagged(&self) -> bool {
        self.tag == 1
    }

    /// Distinct matched patterns in order of first appearance.
    pub fn patterns(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for m in &self.matched {
            if !out.contains(&m.pattern.as_str()) {
                out.push(&m.pattern);
            }
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThemeError {
    #[error("rolling window must be at least 1")]
    ZeroWindow,
}

pub fn tag_absurdity(text: &str, lex: &ThemeLexicon) -> ThemeTag {
    let ws = words(text);
    let folded: Vec<String> = ws.iter().map(|w| w.folded()).collect();
    let mut matched = Vec::new();
    for start in 0..ws.len() {
        for pattern in lex.patterns() {
            let pw = pattern.words();
            if start + pw.len() > ws.len() {
                continue;
            }
            let last = pw.len() - 1;
            let words_match = pw.iter().enumerate().all(|(j, p)| {
                let w = &folded[start + j];
                if j == last && pattern.is_prefix() {
                    w.starts_with(p.as_str())
                } else {
                    w == p
                }
            });
            // phrase words must be separated by exactly one space
            let spaced =
                (start..start + last).all(|k| &text[ws[k].byte_end..ws[k + 1].byte_start] == " ");
            if words_match && spaced {
                matched.push(ThemeMatch {
                    pattern: pattern.as_str().to_owned(),
                    offset: ws[start].start,
                });
            }
        }
    }
    ThemeTag {
        tag: u8::from(!matched.is_empty()),
        matched,
    }
}

/// Trailing-window mean of the tags: element i averages indices
/// `max(0, i - window + 1)..=i`.
pub fn absurdity_series(tags: &[u8], window: usize) -> Result<Vec<(usize, f64)>, ThemeError> {
    if window == 0 {
        return Err(ThemeError::ZeroWindow);
    }
    let mut prefix = Vec::with_capacity(tags.len() + 1);
    prefix.push(0usize);
    for &t in tags {
        prefix.push(prefix.last().unwrap() + usize::from(t));
    }
    Ok((0..tags.len())
        .map(|i| {
            let lo = (i + 1).saturating_sub(window);
            let sum = prefix[i + 1] - prefix[lo];
            (i, sum as f64 / (i + 1 - lo) as f64)
        })
        .collect())
}

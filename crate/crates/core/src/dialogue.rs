//! Dialogue vs. narration from quotation marks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuoteStyle {
    /// `"..."`
    Straight,
    /// `“...”`
    Curly,
    /// `«...»`
    Guillemet,
    /// `‘...’`. Off by default: the closer doubles as an apostrophe.
    CurlySingle,
}

impl QuoteStyle {
    pub const DEFAULT: [QuoteStyle; 3] = [
        QuoteStyle::Straight,
        QuoteStyle::Curly,
        QuoteStyle::Guillemet,
    ];

    pub fn open(self) -> char {
        match self {
            QuoteStyle::Straight => '"',
            QuoteStyle::Curly => '\u{201c}',
            QuoteStyle::Guillemet => '\u{ab}',
            QuoteStyle::CurlySingle => '\u{2018}',
        }
    }

    pub fn close(self) -> char {
        match self {
            QuoteStyle::Straight => '"',
            QuoteStyle::Curly => '\u{201d}',
            QuoteStyle::Guillemet => '\u{bb}',
            QuoteStyle::CurlySingle => '\u{2019}',
        }
    }
}

/// A quoted region in char offsets, delimiters included. An unclosed region
/// runs to the end of the paragraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuoteSpan {
    pub start: usize,
    pub end: usize,
    pub closed: bool,
}

impl QuoteSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Char range strictly inside the delimiters.
    pub fn inner(&self) -> std::ops::Range<usize> {
        let end = if self.closed { self.end - 1 } else { self.end };
        (self.start + 1)..end.max(self.start + 1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialogueInfo {
    pub is_dialogue: bool,
    pub spans: Vec<QuoteSpan>,
    /// An opener was never closed, or a closer appeared with no opener.
    pub unbalanced: bool,
    /// Paragraph length in chars.
    pub text_len: usize,
}

impl DialogueInfo {
    pub fn quoted_len(&self) -> usize {
        self.spans.iter().map(QuoteSpan::len).sum()
    }
}

pub fn classify_dialogue(text: &str, styles: &[QuoteStyle]) -> DialogueInfo {
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut unbalanced = false;
    let mut open: Option<(QuoteStyle, usize)> = None;
    for (i, &c) in chars.iter().enumerate() {
        match open {
            Some((style, start)) => {
                if c == style.close() {
                    spans.push(QuoteSpan {
                        start,
                        end: i + 1,
                        closed: true,
                    });
                    open = None;
                }
            }
            None => {
                if let Some(style) = styles.iter().find(|s| s.open() == c) {
                    open = Some((*style, i));
                } else if styles
                    .iter()
                    .any(|s| s.close() == c && s.open() != c && *s != QuoteStyle::CurlySingle)
                {
                    unbalanced = true;
                }
            }
        }
    }
    if let Some((_, start)) = open {
        spans.push(QuoteSpan {
            start,
            end: chars.len(),
            closed: false,
        });
        unbalanced = true;
    }
    let is_dialogue = spans
        .iter()
        .any(|s| chars[s.inner()].iter().any(|c| !c.is_whitespace()));
    DialogueInfo {
        is_dialogue,
        spans,
        unbalanced,
        text_len: chars.len(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DialogueWeighting {
    /// Fraction of paragraphs containing dialogue.
    #[default]
    Paragraphs,
    /// Fraction of characters inside quotation marks.
    Characters,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DialogueError {
    #[error("dialogue proportion is undefined for an empty corpus")]
    EmptyCorpus,
}

/// `(dialogue_share, narrative_share)`; the two always sum to 1.
pub fn dialogue_proportion<'a, I>(
    infos: I,
    weighting: DialogueWeighting,
) -> Result<(f64, f64), DialogueError>
where
    I: IntoIterator<Item = &'a DialogueInfo>,
{
    let (mut part, mut total) = (0usize, 0usize);
    for info in infos {
        match weighting {
            DialogueWeighting::Paragraphs => {
                part += usize::from(info.is_dialogue);
                total += 1;
            }
            DialogueWeighting::Characters => {
                part += info.quoted_len();
                total += info.text_len;
            }
        }
    }
    if total == 0 {
        return Err(DialogueError::EmptyCorpus);
    }
    let share = part as f64 / total as f64;
    Ok((share, (total - part) as f64 / total as f64))
}

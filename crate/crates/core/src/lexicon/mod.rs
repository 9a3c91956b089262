//! The four immutable lookup tables that drive the analyzers.
//!
//! Flat lexicons are UTF-8 TSV (`#` starts a comment line, no quoting);
//! the character gazetteer is a JSON document. Every loader reports
//! problems with a 1-based line number (TSV) or a JSON path.

mod emotion;
mod gazetteer;
mod themes;
mod valence;

use std::fmt;
use std::path::Path;

use thiserror::Error;

pub use emotion::{Emotion, EmotionLexicon, DEFAULT_PRIORITY};
pub use gazetteer::{CharacterGazetteer, PronounClass, PronounMap};
pub use themes::{ThemeLexicon, ThemePattern};
pub use valence::ValenceLexicon;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("empty theme lexicon")]
    EmptyThemes,
    #[error("{path}: {message}")]
    Json { path: String, message: String },
}

impl LexiconError {
    pub(crate) fn line(line: usize, message: impl Into<String>) -> Self {
        LexiconError::Line {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn json(path: impl Into<String>, message: impl Into<String>) -> Self {
        LexiconError::Json {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// A non-fatal loader diagnostic, e.g. a duplicated token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LexiconWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// A loaded table plus whatever warnings the loader collected.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub lexicon: T,
    pub warnings: Vec<LexiconWarning>,
}

pub(crate) fn read_file(path: &Path) -> Result<String, LexiconError> {
    let bytes = std::fs::read(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| LexiconError::Io {
        path: path.display().to_string(),
        source: std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("not UTF-8 at byte offset {}", e.utf8_error().valid_up_to()),
        ),
    })
}

/// Content lines of a TSV/list file as `(1-based line number, line)`,
/// skipping blanks and `#` comments.
pub(crate) fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    let src = src.strip_prefix('\u{feff}').unwrap_or(src);
    src.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn load_valence_lexicon(path: &Path) -> Result<Loaded<ValenceLexicon>, LexiconError> {
    ValenceLexicon::parse(&read_file(path)?)
}

pub fn load_emotion_lexicon(path: &Path) -> Result<Loaded<EmotionLexicon>, LexiconError> {
    EmotionLexicon::parse(&read_file(path)?)
}

pub fn load_theme_lexicon(path: &Path) -> Result<ThemeLexicon, LexiconError> {
    ThemeLexicon::parse(&read_file(path)?)
}

pub fn load_gazetteer(path: &Path) -> Result<CharacterGazetteer, LexiconError> {
    CharacterGazetteer::from_json(&read_file(path)?)
}

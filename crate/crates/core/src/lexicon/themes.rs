use std::collections::HashSet;
use std::fmt;

use super::{content_lines, LexiconError};
use crate::text::{fold, words};

const BUNDLED: &str = include_str!("../../data/themes.txt");

/// One case-insensitive theme pattern: a single word or a phrase whose last
/// word may end in `*` (prefix match).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThemePattern {
    source: String,
    words: Vec<String>,
    prefix: bool,
}

impl ThemePattern {
    pub fn new(source: &str) -> Result<Self, String> {
        let source = source.trim();
        let (body, prefix) = match source.strip_suffix('*') {
            Some(body) => (body, true),
            None => (source, false),
        };
        if body.trim().is_empty() {
            return Err("empty pattern".into());
        }
        let mut pattern_words = Vec::new();
        for part in body.split(' ') {
            // each part must scan as exactly one word
            let scanned = words(part);
            if part.is_empty() || scanned.len() != 1 || scanned[0].surface != part {
                return Err(format!("invalid pattern '{source}'"));
            }
            pattern_words.push(fold(part));
        }
        if prefix && body.ends_with(' ') {
            return Err(format!("invalid pattern '{source}'"));
        }
        Ok(ThemePattern {
            source: source.to_owned(),
            words: pattern_words,
            prefix,
        })
    }

    /// The pattern as written.
    pub fn as_str(&self) -> &str {
        &self.source
    }

    /// Folded words; the last one is a prefix when [`Self::is_prefix`].
    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn is_prefix(&self) -> bool {
        self.prefix
    }

    fn key(&self) -> String {
        let mut k = self.words.join(" ");
        if self.prefix {
            k.push('*');
        }
        k
    }
}

impl fmt::Display for ThemePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThemeLexicon {
    patterns: Vec<ThemePattern>,
}

impl ThemeLexicon {
    /// One pattern per line; blank and `#` lines skipped.
    pub fn parse(src: &str) -> Result<Self, LexiconError> {
        let mut patterns = Vec::new();
        let mut seen = HashSet::new();
        for (line, content) in content_lines(src) {
            if content.contains('\t') {
                return Err(LexiconError::line(
                    line,
                    "tab in theme pattern (is this a TSV lexicon?)",
                ));
            }
            let pattern = ThemePattern::new(content).map_err(|m| LexiconError::line(line, m))?;
            if !seen.insert(pattern.key()) {
                return Err(LexiconError::line(
                    line,
                    format!("duplicate pattern '{pattern}'"),
                ));
            }
            patterns.push(pattern);
        }
        if patterns.is_empty() {
            return Err(LexiconError::EmptyThemes);
        }
        Ok(ThemeLexicon { patterns })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled theme lexicon is valid")
    }

    pub fn from_patterns<I, S>(patterns: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let src: String = patterns
            .into_iter()
            .map(|p| format!("{}\n", p.as_ref()))
            .collect();
        Self::parse(&src)
    }

    pub fn patterns(&self) -> &[ThemePattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn to_lines(&self) -> String {
        self.patterns.iter().map(|p| format!("{p}\n")).collect()
    }
}

//! Word scanning shared by the lexicon-driven analyzers.
//!
//! A word is a maximal run of alphanumeric characters, where an apostrophe
//! (straight or typographic) between two alphanumerics is part of the word.
//! Offsets are counted in `char`s, never bytes.

/// One word found in a piece of text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Word<'a> {
    /// Char offset of the first character.
    pub start: usize,
    /// Char offset one past the last character.
    pub end: usize,
    /// Byte range into the scanned text.
    pub byte_start: usize,
    pub byte_end: usize,
    pub surface: &'a str,
}

impl Word<'_> {
    /// Lowercased surface with typographic apostrophes folded to `'`.
    pub fn folded(&self) -> String {
        fold(self.surface)
    }
}

pub(crate) fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Lowercase and fold typographic apostrophes.
pub(crate) fn fold(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '\u{2019}' {
            out.push('\'');
        } else {
            out.extend(c.to_lowercase());
        }
    }
    out
}

/// Iterate over the words of `text` in order.
pub(crate) fn words(text: &str) -> Vec<Word<'_>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = i;
        let mut j = i + 1;
        loop {
            if j < chars.len() && chars[j].1.is_alphanumeric() {
                j += 1;
            } else if j + 1 < chars.len()
                && is_apostrophe(chars[j].1)
                && chars[j + 1].1.is_alphanumeric()
            {
                j += 2;
            } else {
                break;
            }
        }
        let byte_start = chars[start].0;
        let byte_end = chars.get(j).map_or(text.len(), |&(b, _)| b);
        out.push(Word {
            start,
            end: j,
            byte_start,
            byte_end,
            surface: &text[byte_start..byte_end],
        });
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<&str> {
        words(text).into_iter().map(|w| w.surface).collect()
    }

    #[test]
    fn contractions_stay_whole() {
        assert_eq!(surfaces("I can't go."), ["I", "can't", "go"]);
        assert_eq!(
            surfaces("didn\u{2019}t matter"),
            ["didn\u{2019}t", "matter"]
        );
    }

    #[test]
    fn quotes_are_not_word_characters() {
        assert_eq!(surfaces("'absurd' dogs'"), ["absurd", "dogs"]);
    }

    #[test]
    fn offsets_count_chars() {
        let w = words("Céleste said");
        assert_eq!((w[1].start, w[1].end), (8, 12));
        assert_eq!(w[0].surface, "Céleste");
    }

    #[test]
    fn fold_lowercases_and_normalizes_apostrophes() {
        assert_eq!(fold("DIDN\u{2019}T"), "didn't");
    }
}

//! Ingestion: raw narrative text to an ordered list of cleaned paragraphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("input is not valid UTF-8 at byte offset {offset}")]
    InvalidEncoding { offset: usize },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One cleaned text unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paragraph {
    pub index: usize,
    pub text: String,
    /// Char offset of the paragraph's first non-blank character in the
    /// normalized input (NFC, `\n` line endings).
    pub source_offset: usize,
}

/// How paragraph boundaries are found.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Delimiter {
    /// One or more blank (whitespace-only) lines end a paragraph.
    #[default]
    BlankLine,
    /// Every non-blank line is its own paragraph.
    Line,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentationConfig {
    pub delimiter: Delimiter,
}

/// Decode raw bytes, reporting the first invalid byte offset.
pub fn decode(bytes: &[u8]) -> Result<String, CorpusError> {
    std::str::from_utf8(bytes)
        .map(str::to_owned)
        .map_err(|e| CorpusError::InvalidEncoding {
            offset: e.valid_up_to(),
        })
}

pub fn read_corpus_file(path: &std::path::Path) -> Result<String, CorpusError> {
    let bytes = std::fs::read(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode(&bytes)
}

/// NFC-normalize and convert `\r\n` and lone `\r` to `\n`.
pub fn normalize_input(raw: &str) -> String {
    let nfc: String = raw.nfc().collect();
    let mut out = String::with_capacity(nfc.len());
    let mut chars = nfc.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\r' {
            if chars.peek() == Some(&'\n') {
                chars.next();
            }
            out.push('\n');
        } else {
            out.push(c);
        }
    }
    out
}

/// Trim, then collapse every internal whitespace run (including newlines)
/// to a single space.
pub fn clean_paragraph(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Split `raw` into cleaned paragraphs.
pub fn segment_text(raw: &str, cfg: SegmentationConfig) -> Vec<Paragraph> {
    let normalized = normalize_input(raw);
    let mut paragraphs = Vec::new();
    // (char offset of block start, accumulated lines)
    let mut block: Option<(usize, String)> = None;
    let mut offset = 0usize;

    let flush = |block: &mut Option<(usize, String)>, out: &mut Vec<Paragraph>| {
        if let Some((start, lines)) = block.take() {
            out.push(Paragraph {
                index: out.len(),
                text: clean_paragraph(&lines),
                source_offset: start,
            });
        }
    };

    for line in normalized.split('\n') {
        let line_chars = line.chars().count();
        if line.trim().is_empty() {
            flush(&mut block, &mut paragraphs);
        } else {
            let leading = line.chars().take_while(|c| c.is_whitespace()).count();
            match (&mut block, cfg.delimiter) {
                (Some((_, lines)), Delimiter::BlankLine) => {
                    lines.push('\n');
                    lines.push_str(line);
                }
                _ => {
                    flush(&mut block, &mut paragraphs);
                    block = Some((offset + leading, line.to_owned()));
                }
            }
        }
        offset += line_chars + 1;
    }
    flush(&mut block, &mut paragraphs);
    paragraphs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(raw: &str) -> Vec<String> {
        segment_text(raw, SegmentationConfig::default())
            .into_iter()
            .map(|p| p.text)
            .collect()
    }

    #[test]
    fn splits_on_blank_line() {
        let ps = segment_text("A\n\nB", SegmentationConfig::default());
        assert_eq!(ps.len(), 2);
        assert_eq!((ps[0].index, ps[0].text.as_str()), (0, "A"));
        assert_eq!((ps[1].index, ps[1].text.as_str()), (1, "B"));
        assert_eq!(ps[1].source_offset, 3);
    }

    #[test]
    fn trailing_blank_lines_dropped() {
        assert_eq!(texts("A\n\n\n\n"), ["A"]);
    }

    #[test]
    fn trim_only() {
        assert_eq!(texts("  Mother died today.  "), ["Mother died today."]);
    }

    #[test]
    fn whitespace_only_lines_are_blank() {
        assert_eq!(texts("A\n \t \nB\nC"), ["A", "B C"]);
    }

    #[test]
    fn line_delimiter() {
        let cfg = SegmentationConfig {
            delimiter: Delimiter::Line,
        };
        let ps = segment_text("A\nB\n\nC", cfg);
        let got: Vec<_> = ps
            .iter()
            .map(|p| (p.text.as_str(), p.source_offset))
            .collect();
        assert_eq!(got, [("A", 0), ("B", 2), ("C", 5)]);
    }

    #[test]
    fn crlf_matches_lf() {
        let lf = segment_text("One\ntwo\n\n  Three\n", SegmentationConfig::default());
        let crlf = segment_text(
            "One\r\ntwo\r\n\r\n  Three\r\n",
            SegmentationConfig::default(),
        );
        assert_eq!(lf, crlf);
        assert_eq!(lf[1].source_offset, 11);
    }

    #[test]
    fn nfc_applied() {
        // e + combining acute
        assert_eq!(texts("Ce\u{301}leste"), ["C\u{e9}leste"]);
    }

    #[test]
    fn clean_examples() {
        assert_eq!(clean_paragraph("  a  b "), "a b");
        assert_eq!(clean_paragraph("a\nb"), "a b");
        assert_eq!(clean_paragraph("a b"), "a b");
        assert_eq!(clean_paragraph("a\t\t b"), "a b");
    }

    #[test]
    fn decode_reports_offset() {
        let err = decode(b"ab\xffcd").unwrap_err();
        assert!(matches!(err, CorpusError::InvalidEncoding { offset: 2 }));
        assert_eq!(err.to_string(), "input is not valid UTF-8 at byte offset 2");
    }
}

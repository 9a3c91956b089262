//! Dataset and summary serialization, plus SVG charts.
//!
//! Output files are written atomically: content goes to a temporary file in
//! the destination directory, which is then renamed over the target.

mod chart;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

use crate::dataset::{CorpusSummary, ParagraphRecord};

pub use chart::{render_chart, ChartData, ChartError, ChartKind, ChartSpec};

pub const RECORDS_CSV_HEADER: [&str; 12] = [
    "index",
    "text",
    "emotion",
    "emotion_source",
    "compound",
    "pos",
    "neu",
    "neg",
    "characters",
    "absurdity",
    "matched",
    "is_dialogue",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("malformed summary {path}: {message}")]
    Summary { path: String, message: String },
}

/// Write `bytes` to `path` via a temp file and rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ReportError> {
    let wrap = |source: io::Error| ReportError::Write {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(bytes).map_err(wrap)?;
    tmp.flush().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

/// RFC 4180 CSV of the records; multi-valued cells joined with `;`.
pub fn records_csv(records: &[ParagraphRecord]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(RECORDS_CSV_HEADER).expect("in-memory write");
    for r in records {
        let characters: Vec<&str> = r.characters.characters.iter().map(String::as_str).collect();
        w.write_record([
            r.paragraph.index.to_string(),
            r.paragraph.text.clone(),
            r.emotion.label.to_string(),
            r.emotion.source.as_str().to_owned(),
            r.sentiment.compound.to_string(),
            r.sentiment.pos.to_string(),
            r.sentiment.neu.to_string(),
            r.sentiment.neg.to_string(),
            characters.join(";"),
            r.theme.tag.to_string(),
            r.theme.patterns().join(";"),
            r.dialogue.is_dialogue.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
}

pub fn write_records_csv(records: &[ParagraphRecord], path: &Path) -> Result<(), ReportError> {
    write_atomic(path, records_csv(records).as_bytes())
}

pub fn records_json(records: &[ParagraphRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn write_records_json(records: &[ParagraphRecord], path: &Path) -> Result<(), ReportError> {
    write_atomic(path, records_json(records).as_bytes())
}

/// `source,target,weight` rows for graph tools.
pub fn edges_csv(edges: &BTreeMap<(String, String), usize>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(["source", "target", "weight"])
        .expect("in-memory write");
    for ((a, b), n) in edges {
        w.write_record([a.as_str(), b.as_str(), &n.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
}

pub fn write_edges_csv(
    edges: &BTreeMap<(String, String), usize>,
    path: &Path,
) -> Result<(), ReportError> {
    write_atomic(path, edges_csv(edges).as_bytes())
}

/// Pretty JSON with every float rendered to exactly six decimals.
struct SixDecimals<'a>(PrettyFormatter<'a>);

impl Formatter for SixDecimals<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        let mut s = format!("{value:.6}");
        if s.trim_start_matches('-')
            .bytes()
            .all(|b| b == b'0' || b == b'.')
        {
            s = "0.000000".to_owned();
        }
        writer.write_all(s.as_bytes())
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serialize with sorted keys and six-decimal floats.
pub fn to_fixed_json<T: Serialize>(value: &T) -> String {
    // round-tripping through Value sorts object keys
    let value = serde_json::to_value(value).expect("value serializes");
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, SixDecimals(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory write");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn summary_json(summary: &CorpusSummary) -> String {
    to_fixed_json(summary)
}

pub fn write_summary_json(summary: &CorpusSummary, path: &Path) -> Result<(), ReportError> {
    write_atomic(path, summary_json(summary).as_bytes())
}

pub fn parse_summary_json(src: &str) -> Result<CorpusSummary, String> {
    serde_json::from_str(src).map_err(|e| e.to_string())
}

pub fn read_summary_json(path: &Path) -> Result<CorpusSummary, ReportError> {
    let src = std::fs::read_to_string(path).map_err(|source| ReportError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_summary_json(&src).map_err(|message| ReportError::Summary {
        path: path.display().to_string(),
        message,
    })
}

//! Hand-built SVG 1.1 charts. Output is a pure function of the spec.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::CorpusSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ChartKind {
    EmotionBar,
    SentimentHist,
    CharacterBar,
    AbsurdityLine,
    DialoguePie,
}

impl ChartKind {
    pub const ALL: [ChartKind; 5] = [
        ChartKind::EmotionBar,
        ChartKind::SentimentHist,
        ChartKind::CharacterBar,
        ChartKind::AbsurdityLine,
        ChartKind::DialoguePie,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChartKind::EmotionBar => "emotion_bar",
            ChartKind::SentimentHist => "sentiment_hist",
            ChartKind::CharacterBar => "character_bar",
            ChartKind::AbsurdityLine => "absurdity_line",
            ChartKind::DialoguePie => "dialogue_pie",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.svg", self.as_str())
    }

    fn default_title(self) -> &'static str {
        match self {
            ChartKind::EmotionBar => "Frequency of emotion labels",
            ChartKind::SentimentHist => "Distribution of sentiment scores",
            ChartKind::CharacterBar => "Interactions with each character",
            ChartKind::AbsurdityLine => "Distribution of absurdity tags",
            ChartKind::DialoguePie => "Dialogue vs. narrative",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChartData {
    /// Labelled non-negative values, drawn left to right.
    Bars(Vec<(String, f64)>),
    /// Equal-width bins over `[lo, hi]`.
    Histogram {
        lo: f64,
        hi: f64,
        counts: Vec<usize>,
    },
    /// Values in [0, 1] over an implicit 0..n index.
    Series { window: usize, values: Vec<f64> },
    /// Labelled non-negative shares; normalized by their sum.
    Shares(Vec<(String, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub title: String,
    pub width: u32,
    pub height: u32,
    pub data: ChartData,
}

#[derive(Debug, Error, PartialEq)]
pub enum ChartError {
    #[error("chart kind {kind} does not accept {data} data")]
    KindMismatch {
        kind: &'static str,
        data: &'static str,
    },
    #[error("chart size {width}x{height} leaves no room to plot")]
    BadSize { width: u32, height: u32 },
    #[error("invalid chart data: {0}")]
    BadData(String),
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 60.0;
const MARGIN_BOTTOM: f64 = 90.0;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];

impl ChartSpec {
    pub fn from_summary(kind: ChartKind, summary: &CorpusSummary) -> ChartSpec {
        let data = match kind {
            ChartKind::EmotionBar => ChartData::Bars(
                summary
                    .emotion_freq
                    .iter()
                    .map(|(e, n)| (e.to_string(), *n as f64))
                    .collect(),
            ),
            ChartKind::SentimentHist => ChartData::Histogram {
                lo: -1.0,
                hi: 1.0,
                counts: summary.sentiment_hist.clone(),
            },
            ChartKind::CharacterBar => {
                let mut bars: Vec<(String, f64)> = summary
                    .interaction_counts
                    .iter()
                    .map(|(name, n)| (name.clone(), *n as f64))
                    .collect();
                // most frequent first; BTreeMap order breaks ties
                bars.sort_by(|a, b| b.1.total_cmp(&a.1));
                ChartData::Bars(bars)
            }
            ChartKind::AbsurdityLine => ChartData::Series {
                window: summary.absurdity_window,
                values: summary.absurdity_series.clone(),
            },
            ChartKind::DialoguePie => ChartData::Shares(vec![
                ("dialogue".to_owned(), summary.dialogue_share),
                ("narrative".to_owned(), summary.narrative_share),
            ]),
        };
        ChartSpec {
            kind,
            title: kind.default_title().to_owned(),
            width: 800,
            height: 500,
            data,
        }
    }

    fn validate(&self) -> Result<(), ChartError> {
        let data_name = match &self.data {
            ChartData::Bars(_) => "bars",
            ChartData::Histogram { .. } => "histogram",
            ChartData::Series { .. } => "series",
            ChartData::Shares(_) => "shares",
        };
        let ok = matches!(
            (self.kind, &self.data),
            (
                ChartKind::EmotionBar | ChartKind::CharacterBar,
                ChartData::Bars(_)
            ) | (ChartKind::SentimentHist, ChartData::Histogram { .. })
                | (ChartKind::AbsurdityLine, ChartData::Series { .. })
                | (ChartKind::DialoguePie, ChartData::Shares(_))
        );
        if !ok {
            return Err(ChartError::KindMismatch {
                kind: self.kind.as_str(),
                data: data_name,
            });
        }
        if f64::from(self.width) <= MARGIN_LEFT + MARGIN_RIGHT + 20.0
            || f64::from(self.height) <= MARGIN_TOP + MARGIN_BOTTOM + 20.0
        {
            return Err(ChartError::BadSize {
                width: self.width,
                height: self.height,
            });
        }
        let bad = |v: f64| !v.is_finite() || v < 0.0;
        match &self.data {
            ChartData::Bars(bars) | ChartData::Shares(bars) => {
                if let Some((label, v)) = bars.iter().find(|(_, v)| bad(*v)) {
                    return Err(ChartError::BadData(format!("value {v} for '{label}'")));
                }
            }
            ChartData::Histogram { lo, hi, counts } => {
                if counts.is_empty() || lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) {
                    return Err(ChartError::BadData(
                        "histogram needs bins and lo < hi".into(),
                    ));
                }
            }
            ChartData::Series { values, .. } => {
                if values.iter().any(|v| bad(*v) || *v > 1.0) {
                    return Err(ChartError::BadData(
                        "series values must lie in [0, 1]".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn plot_width(&self) -> f64 {
        f64::from(self.width) - MARGIN_LEFT - MARGIN_RIGHT
    }

    fn plot_height(&self) -> f64 {
        f64::from(self.height) - MARGIN_TOP - MARGIN_BOTTOM
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Fixed three-decimal coordinates, without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_owned()
    } else {
        s
    }
}

/// Axis tick label: integers plainly, otherwise up to two decimals.
fn tick(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        let s = format!("{v:.2}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    }
}

pub fn render_chart(spec: &ChartSpec) -> Result<String, ChartError> {
    spec.validate()?;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" data-kind="{}">"#,
        spec.width,
        spec.height,
        spec.width,
        spec.height,
        spec.kind.as_str()
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="32" font-size="18" text-anchor="middle">{}</text>"#,
        num(f64::from(spec.width) / 2.0),
        escape(&spec.title)
    );
    match &spec.data {
        ChartData::Bars(bars) => render_bars(&mut svg, spec, bars),
        ChartData::Histogram { lo, hi, counts } => render_hist(&mut svg, spec, *lo, *hi, counts),
        ChartData::Series { window, values } => render_series(&mut svg, spec, *window, values),
        ChartData::Shares(shares) => render_pie(&mut svg, spec, shares),
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn axes(svg: &mut String, spec: &ChartSpec, y_max: f64, y_ticks: &[f64]) {
    let (pw, ph) = (spec.plot_width(), spec.plot_height());
    let base = MARGIN_TOP + ph;
    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="{x}" y1="{t}" x2="{x}" y2="{b}" stroke="#333333"/>"##,
        x = num(MARGIN_LEFT),
        t = num(MARGIN_TOP),
        b = num(base)
    );
    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="{l}" y1="{b}" x2="{r}" y2="{b}" stroke="#333333"/>"##,
        l = num(MARGIN_LEFT),
        r = num(MARGIN_LEFT + pw),
        b = num(base)
    );
    for &t in y_ticks {
        let y = if y_max > 0.0 {
            base - ph * t / y_max
        } else {
            base
        };
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"##,
            num(MARGIN_LEFT - 6.0),
            num(y + 4.0),
            tick(t)
        );
    }
}

fn render_bars(svg: &mut String, spec: &ChartSpec, bars: &[(String, f64)]) {
    let (pw, ph) = (spec.plot_width(), spec.plot_height());
    let base = MARGIN_TOP + ph;
    let max = bars.iter().map(|b| b.1).fold(0.0, f64::max);
    axes(svg, spec, max, &[0.0, max / 2.0, max]);
    if bars.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">no data</text>"#,
            num(MARGIN_LEFT + pw / 2.0),
            num(MARGIN_TOP + ph / 2.0)
        );
        return;
    }
    let slot = pw / bars.len() as f64;
    let bar_w = slot * 0.7;
    for (i, (label, value)) in bars.iter().enumerate() {
        let bh = if max > 0.0 { ph * value / max } else { 0.0 };
        let x = MARGIN_LEFT + slot * i as f64 + (slot - bar_w) / 2.0;
        let cx = x + bar_w / 2.0;
        let _ = writeln!(
            svg,
            r#"<rect class="bar" data-label="{}" data-value="{}" x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
            escape(label),
            value,
            num(x),
            num(base - bh),
            num(bar_w),
            num(bh),
            PALETTE[i % PALETTE.len()]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            num(cx),
            num(base - bh - 4.0),
            value
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" font-size="12" text-anchor="end" transform="rotate(-35 {x} {y})">{}</text>"#,
            escape(label),
            x = num(cx),
            y = num(base + 16.0)
        );
    }
}

fn render_hist(svg: &mut String, spec: &ChartSpec, lo: f64, hi: f64, counts: &[usize]) {
    let (pw, ph) = (spec.plot_width(), spec.plot_height());
    let base = MARGIN_TOP + ph;
    let max = counts.iter().copied().max().unwrap_or(0) as f64;
    axes(svg, spec, max, &[0.0, max / 2.0, max]);
    let bin_w = pw / counts.len() as f64;
    let step = (hi - lo) / counts.len() as f64;
    for (i, &n) in counts.iter().enumerate() {
        let bh = if max > 0.0 { ph * n as f64 / max } else { 0.0 };
        let x = MARGIN_LEFT + bin_w * i as f64;
        let _ = writeln!(
            svg,
            r##"<rect class="bar" data-lo="{}" data-value="{}" x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="#ffffff"/>"##,
            num(lo + step * i as f64),
            n,
            num(x),
            num(base - bh),
            num(bin_w),
            num(bh),
            PALETTE[0]
        );
    }
    for k in 0..=4 {
        let frac = k as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            num(MARGIN_LEFT + pw * frac),
            num(base + 18.0),
            tick(lo + (hi - lo) * frac)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">compound score</text>"#,
        num(MARGIN_LEFT + pw / 2.0),
        num(base + 40.0)
    );
}

fn render_series(svg: &mut String, spec: &ChartSpec, window: usize, values: &[f64]) {
    let (pw, ph) = (spec.plot_width(), spec.plot_height());
    let base = MARGIN_TOP + ph;
    axes(svg, spec, 1.0, &[0.0, 0.5, 1.0]);
    let n = values.len();
    let x_at = |i: usize| {
        if n <= 1 {
            MARGIN_LEFT + pw / 2.0
        } else {
            MARGIN_LEFT + pw * i as f64 / (n - 1) as f64
        }
    };
    let points: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{},{}", num(x_at(i)), num(base - ph * v)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline class="series" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
        PALETTE[2],
        points.join(" ")
    );
    let last = n.saturating_sub(1);
    for (i, label) in [(0, "0".to_owned()), (last, last.to_string())] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            num(x_at(i)),
            num(base + 18.0),
            label
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">paragraph index (rolling mean, window {})</text>"#,
        num(MARGIN_LEFT + pw / 2.0),
        num(base + 40.0),
        window
    );
}

fn render_pie(svg: &mut String, spec: &ChartSpec, shares: &[(String, f64)]) {
    let (pw, ph) = (spec.plot_width(), spec.plot_height());
    let r = pw.min(ph) / 2.0;
    let (cx, cy) = (MARGIN_LEFT + r, MARGIN_TOP + ph / 2.0);
    let total: f64 = shares.iter().map(|s| s.1).sum();
    let point = |deg: f64| {
        // 0 degrees at twelve o'clock, clockwise
        let rad = (deg - 90.0).to_radians();
        (cx + r * rad.cos(), cy + r * rad.sin())
    };
    let mut start = 0.0f64;
    for (i, (label, value)) in shares.iter().enumerate() {
        let frac = if total > 0.0 { value / total } else { 0.0 };
        let sweep = 360.0 * frac;
        let color = PALETTE[i % PALETTE.len()];
        if frac >= 1.0 {
            let _ = writeln!(
                svg,
                r#"<circle class="slice" data-label="{}" data-share="{}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
                escape(label),
                frac,
                num(cx),
                num(cy),
                num(r),
                color
            );
        } else if frac > 0.0 {
            let (x0, y0) = point(start);
            let (x1, y1) = point(start + sweep);
            let _ = writeln!(
                svg,
                r##"<path class="slice" data-label="{}" data-share="{}" d="M {} {} L {} {} A {} {} 0 {} 1 {} {} Z" fill="{}" stroke="#ffffff"/>"##,
                escape(label),
                frac,
                num(cx),
                num(cy),
                num(x0),
                num(y0),
                num(r),
                num(r),
                u8::from(sweep > 180.0),
                num(x1),
                num(y1),
                color
            );
        }
        start += sweep;
        let ly = MARGIN_TOP + 20.0 + 24.0 * i as f64;
        let lx = cx + r + 40.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{}" width="14" height="14" fill="{}"/>"#,
            num(lx),
            num(ly - 11.0),
            color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="13">{} {:.1}%</text>"#,
            num(lx + 20.0),
            num(ly),
            escape(label),
            frac * 100.0
        );
    }
}

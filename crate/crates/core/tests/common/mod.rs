//! Shared fixtures and reference implementations for the integration tests.
//! The oracles here are written from the documented rules, without calling
//! into the library's scanners or scorers.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn sample_path() -> PathBuf {
    data_dir().join("sample.txt")
}

pub fn datafy() -> Command {
    Command::new(env!("CARGO_BIN_EXE_datafy"))
}

pub fn run(args: &[&str]) -> Output {
    datafy().args(args).output().expect("binary runs")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Run `analyze` on `input` into `out` with extra flags; returns the output.
pub fn analyze(input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "analyze".to_owned(),
        "--input".to_owned(),
        input.display().to_string(),
        "--out".to_owned(),
        out.display().to_string(),
    ];
    args.extend(extra.iter().map(|s| (*s).to_owned()));
    datafy().args(&args).output().expect("binary runs")
}

/// Write an executable shell script and return its path.
pub fn write_script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\n{body}")).unwrap();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    }
    path
}

/// Adapter that answers every request with `label`, echoing the id.
pub fn fixed_label_adapter(dir: &Path, label: &str) -> PathBuf {
    write_script(
        dir,
        "fixed.sh",
        &format!(
            r#"while IFS= read -r line; do
  id=${{line#*\"id\":}}
  id=${{id%%,*}}
  printf '{{"id":%s,"label":"{label}"}}\n' "$id"
done
"#
        ),
    )
}

/// Deterministic sampling from a proptest strategy.
pub struct Sampler(TestRunner);

impl Sampler {
    pub fn new() -> Self {
        Sampler(TestRunner::deterministic())
    }

    pub fn draw<S: Strategy>(&mut self, s: S) -> S::Value {
        s.new_tree(&mut self.0)
            .expect("strategy generates")
            .current()
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new()
    }
}

/// Words per the documented rule: alphanumeric runs, with an apostrophe kept
/// only when it has an alphanumeric on both sides. Lowercased, `’` as `'`.
pub fn oracle_words(text: &str) -> Vec<String> {
    let lowered: String = text
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect::<String>()
        .to_lowercase();
    let mut out = Vec::new();
    for piece in lowered.split(|c: char| !(c.is_alphanumeric() || c == '\'')) {
        let cs: Vec<char> = piece.chars().collect();
        let mut cur = String::new();
        for (i, &c) in cs.iter().enumerate() {
            let inner = c == '\''
                && i > 0
                && i + 1 < cs.len()
                && cs[i - 1].is_alphanumeric()
                && cs[i + 1].is_alphanumeric();
            if c.is_alphanumeric() || inner {
                cur.push(c);
            } else if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
    }
    out
}

/// Count-and-argmax emotion oracle. `lexicon` maps a word to its labels;
/// `priority` lists labels from most to least preferred on ties.
pub fn oracle_emotion<'a>(
    text: &str,
    lexicon: &BTreeMap<String, Vec<&'a str>>,
    priority: &[&'a str],
) -> (&'a str, BTreeMap<&'a str, usize>) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for w in oracle_words(text) {
        if let Some(labels) = lexicon.get(&w) {
            for l in labels {
                *counts.entry(l).or_insert(0) += 1;
            }
        }
    }
    let mut best = "neutral";
    let mut best_n = 0;
    for &label in priority {
        let n = counts.get(label).copied().unwrap_or(0);
        if n > best_n {
            best = label;
            best_n = n;
        }
    }
    (best, counts)
}

/// Substring-scan absurdity oracle: number of (pattern, position) hits.
/// A hit must start a word; a non-prefix pattern must also end one.
pub fn oracle_theme_hits(text: &str, patterns: &[&str]) -> usize {
    let folded: Vec<char> = text
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .flat_map(char::to_lowercase)
        .collect();
    let alnum = |i: usize| folded.get(i).is_some_and(|c| c.is_alphanumeric());
    let apostrophe = |i: usize| folded.get(i) == Some(&'\'');
    let starts_word = |p: usize| {
        if p == 0 {
            return true;
        }
        !alnum(p - 1) && !(apostrophe(p - 1) && p >= 2 && alnum(p - 2))
    };
    let ends_word = |e: usize| !alnum(e) && !(apostrophe(e) && alnum(e + 1));

    let mut hits = 0;
    for pat in patterns {
        let (body, prefix) = match pat.strip_suffix('*') {
            Some(b) => (b, true),
            None => (*pat, false),
        };
        let body: Vec<char> = body.to_lowercase().chars().collect();
        if body.len() > folded.len() {
            continue;
        }
        for p in 0..=folded.len() - body.len() {
            if folded[p..p + body.len()] == body[..]
                && starts_word(p)
                && (prefix || ends_word(p + body.len()))
            {
                hits += 1;
            }
        }
    }
    hits
}

/// Brute-force sentiment evaluator over a tiny fixed vocabulary, applying the
/// rules token by token. Returns (compound, pos, neu, neg).
pub mod mini_sentiment {
    pub const WORDS: [&str; 10] = [
        "good", "bad", "happy", "sad", "not", "very", "slightly", "but", "the", "GOOD",
    ];

    pub const LEXICON: [(&str, f64); 4] =
        [("good", 1.9), ("bad", -2.5), ("happy", 2.7), ("sad", -2.1)];

    fn base(word: &str) -> f64 {
        match word.to_lowercase().as_str() {
            "good" => 1.9,
            "bad" => -2.5,
            "happy" => 2.7,
            "sad" => -2.1,
            _ => 0.0,
        }
    }

    fn in_lexicon(word: &str) -> bool {
        matches!(
            word.to_lowercase().as_str(),
            "good" | "bad" | "happy" | "sad"
        )
    }

    fn boost(word: &str) -> f64 {
        match word.to_lowercase().as_str() {
            "very" => 0.293,
            "slightly" => -0.293,
            _ => 0.0,
        }
    }

    fn shouting(word: &str) -> bool {
        word.chars().filter(|c| c.is_alphabetic()).count() >= 2
            && !word.chars().any(char::is_lowercase)
    }

    /// `tokens` are bare words from [`WORDS`]; `bangs` trailing `!`s go on
    /// the last token.
    pub fn evaluate(tokens: &[&str], bangs: usize) -> (f64, f64, f64, f64) {
        if tokens.is_empty() {
            return (0.0, 0.0, 0.0, 0.0);
        }
        let some_caps = tokens.iter().any(|t| shouting(t));
        let all_caps = tokens.iter().all(|t| shouting(t));
        let emphasize_caps = some_caps && !all_caps;

        let mut vals = Vec::new();
        for (i, t) in tokens.iter().enumerate() {
            let mut v = base(t);
            if v == 0.0 || boost(t) != 0.0 {
                vals.push(0.0);
                continue;
            }
            if emphasize_caps && shouting(t) {
                v += if v > 0.0 { 0.733 } else { -0.733 };
            }
            let damp = [1.0, 0.95, 0.9];
            for d in 1..=3 {
                if d > i {
                    break;
                }
                let p = tokens[i - d];
                if in_lexicon(p) {
                    continue;
                }
                let b = boost(p);
                if b != 0.0 {
                    let mut s = if v < 0.0 { -b } else { b };
                    if emphasize_caps && shouting(p) {
                        s += if v > 0.0 { 0.733 } else { -0.733 };
                    }
                    v += s * damp[d - 1];
                }
                if p.to_lowercase() == "not" {
                    v *= -0.74;
                }
            }
            vals.push(v);
        }
        if let Some(k) = tokens.iter().position(|t| t.to_lowercase() == "but") {
            for (i, v) in vals.iter_mut().enumerate() {
                if i < k {
                    *v *= 0.5;
                } else if i > k {
                    *v *= 1.5;
                }
            }
        }
        let emph = bangs.min(4) as f64 * 0.292;
        let mut s: f64 = vals.iter().sum();
        if s > 0.0 {
            s += emph;
        } else if s < 0.0 {
            s -= emph;
        }
        let compound = (s / (s * s + 15.0).sqrt()).clamp(-1.0, 1.0);

        let mut pos = 0.0f64;
        let mut neg = 0.0f64;
        let mut neu = 0usize;
        for &v in &vals {
            if v > 0.0 {
                pos += v + 1.0;
            } else if v < 0.0 {
                neg += v - 1.0;
            } else {
                neu += 1;
            }
        }
        if pos > neg.abs() {
            pos += emph;
        } else if pos < neg.abs() {
            neg -= emph;
        }
        let total = pos + neg.abs() + neu as f64;
        (compound, pos / total, neu as f64 / total, neg.abs() / total)
    }
}

/// All sequences of length 0..=max_len over `words`.
pub fn all_sequences<'a>(words: &[&'a str], max_len: usize) -> Vec<Vec<&'a str>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for w in words {
                let mut s: Vec<&str> = seq.clone();
                s.push(w);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Synthetic corpus of `n` paragraphs cycling through varied sentences.
pub fn synthetic_corpus(n: usize) -> String {
    const LINES: [&str; 10] = [
        "\"You're late again,\" Marie said, and she laughed at me.",
        "The heat on the beach was terrible and I felt sick and tired.",
        "Raymond said the whole affair was absurd and meaningless.",
        "Old Salamano walked his dog along the street as usual.",
        "I was very happy that evening but I did not say so.",
        "The lawyer told me to keep quiet; nothing mattered anyway.",
        "«Do you believe in God?» the magistrate asked.",
        "Céleste was upset, and Masson looked away without a word.",
        "It didn’t mean anything to me, and I said it plainly!",
        "The chaplain spoke of love and hope, and I grew angry.",
    ];
    (0..n)
        .map(|i| format!("{} {}", LINES[i % 10], LINES[(i * 7 + 3) % 10]))
        .collect::<Vec<_>>()
        .join("\n\n")
}

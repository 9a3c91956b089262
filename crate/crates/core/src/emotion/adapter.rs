//! Client side of the external classifier protocol.
//!
//! The adapter is a child process speaking newline-delimited JSON over its
//! standard streams. For each paragraph we write one request line
//!
//! ```text
//! {"id":0,"text":"Mother died today."}
//! ```
//!
//! and expect one response line echoing the id:
//!
//! ```text
//! {"id":0,"label":"sadness","scores":{"sadness":0.9}}
//! ```
//!
//! `scores` is optional and defaults to `{label: 1.0}`. Responses within a
//! batch may arrive in any order. The child's stdin is closed once every
//! batch has been answered.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, Command, Stdio};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{argmax, EmotionResult, EmotionSource};
use crate::lexicon::{Emotion, EmotionLexicon};

#[derive(Debug, Clone, PartialEq)]
pub struct AdapterConfig {
    /// Shell command line that starts the adapter.
    pub command: String,
    /// Budget for each batch, from the first request written to the last
    /// response read.
    pub timeout: Duration,
    /// Labels the adapter is allowed to return.
    pub labels: BTreeSet<Emotion>,
    pub batch_size: usize,
}

impl AdapterConfig {
    pub fn new(command: impl Into<String>) -> Self {
        AdapterConfig {
            command: command.into(),
            timeout: Duration::from_secs(30),
            labels: Emotion::ALL.into_iter().collect(),
            batch_size: 64,
        }
    }
}

#[derive(Debug, Error)]
pub enum AdapterError {
    #[error("cannot start adapter `{command}`: {source}")]
    Spawn {
        command: String,
        #[source]
        source: std::io::Error,
    },
    #[error("adapter timed out after {}s with {pending} of {expected} responses outstanding", timeout.as_secs_f64())]
    Timeout {
        timeout: Duration,
        pending: usize,
        expected: usize,
    },
    #[error("malformed adapter response {line:?}: {reason}")]
    Malformed { line: String, reason: String },
    #[error("adapter returned unknown label '{label}' for id {id}")]
    UnknownLabel { id: usize, label: String },
    #[error("adapter closed its output{} without answering ids {missing:?}", status.as_deref().map(|s| format!(" ({s})")).unwrap_or_default())]
    MissingIds {
        missing: Vec<usize>,
        status: Option<String>,
    },
    #[error("duplicate id {0} in adapter request batch")]
    DuplicateRequestId(usize),
}

#[derive(Debug, Serialize)]
pub struct AdapterRequest<'a> {
    pub id: usize,
    pub text: &'a str,
}

#[derive(Debug, Deserialize)]
pub struct AdapterResponse {
    pub id: usize,
    pub label: String,
    #[serde(default)]
    pub scores: Option<BTreeMap<String, f64>>,
}

fn shell(command: &str) -> Command {
    if cfg!(windows) {
        let mut c = Command::new("cmd");
        c.args(["/C", command]);
        c
    } else {
        let mut c = Command::new("sh");
        c.args(["-c", command]);
        c
    }
}

/// Kills the child if we bail out early.
struct ChildGuard(Option<Child>);

impl ChildGuard {
    fn status_text(&mut self) -> Option<String> {
        let child = self.0.as_mut()?;
        let deadline = Instant::now() + Duration::from_millis(200);
        while Instant::now() < deadline {
            if let Ok(Some(status)) = child.try_wait() {
                return Some(status.to_string());
            }
            thread::sleep(Duration::from_millis(5));
        }
        None
    }

    fn finish(mut self, timeout: Duration) {
        if let Some(mut child) = self.0.take() {
            let deadline = Instant::now() + timeout;
            loop {
                match child.try_wait() {
                    Ok(Some(_)) | Err(_) => return,
                    Ok(None) if Instant::now() >= deadline => {
                        let _ = child.kill();
                        let _ = child.wait();
                        return;
                    }
                    Ok(None) => thread::sleep(Duration::from_millis(2)),
                }
            }
        }
    }
}

impl Drop for ChildGuard {
    fn drop(&mut self) {
        if let Some(mut child) = self.0.take() {
            let _ = child.kill();
            let _ = child.wait();
        }
    }
}

fn parse_response(
    line: &str,
    cfg: &AdapterConfig,
    lex: &EmotionLexicon,
) -> Result<(usize, EmotionResult), AdapterError> {
    let malformed = |reason: String| AdapterError::Malformed {
        line: line.to_owned(),
        reason,
    };
    let resp: AdapterResponse = serde_json::from_str(line).map_err(|e| malformed(e.to_string()))?;
    let id = resp.id;
    let parse_label = |s: &str| -> Result<Emotion, AdapterError> {
        s.parse::<Emotion>()
            .ok()
            .filter(|e| cfg.labels.contains(e))
            .ok_or_else(|| AdapterError::UnknownLabel {
                id,
                label: s.to_owned(),
            })
    };
    let label = parse_label(&resp.label)?;
    let scores = match resp.scores {
        None => BTreeMap::from([(label, 1.0)]),
        Some(raw) => {
            let mut scores = BTreeMap::new();
            for (k, v) in raw {
                if !v.is_finite() || v < 0.0 {
                    return Err(malformed(format!(
                        "score for '{k}' must be a non-negative number"
                    )));
                }
                scores.insert(parse_label(&k)?, v);
            }
            scores
        }
    };
    if argmax(&scores, lex) != label {
        return Err(malformed(format!(
            "label '{label}' is not the highest-scoring label"
        )));
    }
    Ok((
        id,
        EmotionResult {
            label,
            scores,
            source: EmotionSource::Adapter,
        },
    ))
}

/// Classify every `(id, text)` pair through the adapter. Results come back
/// sorted by id.
pub fn classify_via_adapter(
    batch: &[(usize, &str)],
    cfg: &AdapterConfig,
    lex: &EmotionLexicon,
) -> Result<Vec<EmotionResult>, AdapterError> {
    let mut seen = BTreeSet::new();
    for (id, _) in batch {
        if !seen.insert(*id) {
            return Err(AdapterError::DuplicateRequestId(*id));
        }
    }
    if batch.is_empty() {
        return Ok(Vec::new());
    }

    let mut child = shell(&cfg.command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .map_err(|source| AdapterError::Spawn {
            command: cfg.command.clone(),
            source,
        })?;
    let mut stdin = child.stdin.take().expect("stdin piped");
    let stdout = child.stdout.take().expect("stdout piped");
    let mut guard = ChildGuard(Some(child));

    let (line_tx, line_rx) = mpsc::channel::<Result<String, std::io::Error>>();
    thread::spawn(move || {
        for line in BufReader::new(stdout).lines() {
            if line_tx.send(line).is_err() {
                break;
            }
        }
    });
    let (req_tx, req_rx) = mpsc::channel::<Vec<u8>>();
    thread::spawn(move || {
        for payload in req_rx {
            if stdin
                .write_all(&payload)
                .and_then(|_| stdin.flush())
                .is_err()
            {
                break;
            }
        }
        // dropping stdin signals EOF to the adapter
    });

    let mut results: BTreeMap<usize, EmotionResult> = BTreeMap::new();
    let mut req_tx = Some(req_tx);
    let n_chunks = batch.len().div_ceil(cfg.batch_size.max(1));
    for (k, chunk) in batch.chunks(cfg.batch_size.max(1)).enumerate() {
        let mut payload = Vec::new();
        for (id, text) in chunk {
            serde_json::to_writer(&mut payload, &AdapterRequest { id: *id, text })
                .expect("request serializes");
            payload.push(b'\n');
        }
        let mut pending: BTreeSet<usize> = chunk.iter().map(|(id, _)| *id).collect();
        // a closed writer shows up as missing responses below
        if let Some(tx) = &req_tx {
            let _ = tx.send(payload);
        }
        if k + 1 == n_chunks {
            // no more requests: let adapters that read to EOF flush
            req_tx = None;
        }

        let deadline = Instant::now() + cfg.timeout;
        while !pending.is_empty() {
            let remaining = deadline.saturating_duration_since(Instant::now());
            match line_rx.recv_timeout(remaining) {
                Ok(Ok(line)) => {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let (id, result) = parse_response(&line, cfg, lex)?;
                    if !pending.remove(&id) {
                        let reason = if results.contains_key(&id) {
                            format!("duplicate response for id {id}")
                        } else {
                            format!("unexpected id {id}")
                        };
                        return Err(AdapterError::Malformed { line, reason });
                    }
                    results.insert(id, result);
                }
                Ok(Err(e)) => {
                    return Err(AdapterError::Malformed {
                        line: String::new(),
                        reason: e.to_string(),
                    })
                }
                Err(mpsc::RecvTimeoutError::Timeout) => {
                    return Err(AdapterError::Timeout {
                        timeout: cfg.timeout,
                        pending: pending.len(),
                        expected: chunk.len(),
                    })
                }
                Err(mpsc::RecvTimeoutError::Disconnected) => {
                    let mut missing: Vec<usize> = batch
                        .iter()
                        .map(|(id, _)| *id)
                        .filter(|id| !results.contains_key(id))
                        .collect();
                    missing.sort_unstable();
                    missing.dedup();
                    return Err(AdapterError::MissingIds {
                        missing,
                        status: guard.status_text(),
                    });
                }
            }
        }
    }
    guard.finish(cfg.timeout);
    Ok(results.into_values().collect())
}

//! JSON-lines match log: one header line, one line per cycle, one footer.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::engine::{AgentDecision, Event, StateRecord};
use crate::config::Config;

/// Version string written into every log header.
pub const LOG_VERSION: &str = concat!("fieldmind/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "line", rename_all = "snake_case")]
pub enum LogLine {
    Header { version: String, seed: u64, match_index: u64, swapped: bool, config: Box<Config> },
    Cycle { cycle: u64, state: StateRecord, decisions: Vec<AgentDecision>, events: Vec<Event> },
    Footer { score: (u32, u32), cycles: u64, digest: String },
}

/// Destination for log lines. Sinks that are not `enabled` are never
/// handed a line, so the engine can skip building them.
pub trait LogSink {
    fn enabled(&self) -> bool;
    fn write_line(&mut self, line: &LogLine) -> io::Result<()>;
    /// Hex SHA-256 of every byte written so far.
    fn digest(&self) -> Option<String> {
        None
    }
}

/// Discards everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullSink;

impl LogSink for NullSink {
    fn enabled(&self) -> bool {
        false
    }

    fn write_line(&mut self, _: &LogLine) -> io::Result<()> {
        Ok(())
    }
}

/// Writes one JSON object per line and hashes the bytes as it goes.
pub struct JsonLinesSink<W: Write> {
    out: W,
    hasher: Sha256,
}

impl<W: Write> JsonLinesSink<W> {
    pub fn new(out: W) -> Self {
        Self { out, hasher: Sha256::new() }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> LogSink for JsonLinesSink<W> {
    fn enabled(&self) -> bool {
        true
    }

    fn write_line(&mut self, line: &LogLine) -> io::Result<()> {
        let mut bytes = serde_json::to_vec(line).map_err(io::Error::other)?;
        bytes.push(b'\n');
        self.hasher.update(&bytes);
        self.out.write_all(&bytes)
    }

    fn digest(&self) -> Option<String> {
        Some(hex::encode(self.hasher.clone().finalize()))
    }
}

/// Parses a whole log back into lines, reporting the first bad line number.
pub fn read_log(text: &str) -> Result<Vec<LogLine>, (usize, serde_json::Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| (i + 1, e)))
        .collect()
}

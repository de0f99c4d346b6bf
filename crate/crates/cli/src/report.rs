//! JSON-lines report sink.

use anyhow::{Context, Result};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Writes one JSON object per line: `{tool, version, command, config_hash, record, data}`.
pub struct Reporter {
    out: Box<dyn Write>,
    command: &'static str,
    hash: String,
}

#[derive(Serialize)]
struct Line<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config_hash: &'a str,
    record: &'a str,
    data: &'a T,
}

impl Reporter {
    pub fn open(path: Option<&Path>, command: &'static str, hash: String) -> Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating report {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(std::io::stdout())),
        };
        Ok(Reporter { out, command, hash })
    }

    /// Appends a record of kind `record`.
    pub fn emit<T: Serialize>(&mut self, record: &str, data: &T) -> Result<()> {
        let line = Line {
            tool: "eiko",
            version: VERSION,
            command: self.command,
            config_hash: &self.hash,
            record,
            data,
        };
        serde_json::to_writer(&mut self.out, &line)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

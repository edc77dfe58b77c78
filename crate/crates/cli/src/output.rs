//! Artifact writing: a `#`-prefixed JSON metadata line followed by CSV rows,
//! or a single JSON document.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::units::Units;

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn metadata(command: &str, units: &Units, params: Value) -> Value {
    json!({
        "tool": "equitri",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "units": units,
        "params": params,
    })
}

/// Shortest round-trip form; scientific notation outside `[1e-4, 1e7)`.
pub fn num(x: f64) -> String {
    let ax = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e7).contains(&ax) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub struct CsvArtifact {
    writer: csv::Writer<Box<dyn Write>>,
}

impl CsvArtifact {
    pub fn create(path: Option<&Path>, meta: &Value, columns: &[&str]) -> io::Result<Self> {
        let mut out = open(path)?;
        writeln!(out, "# {}", serde_json::to_string(meta)?)?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(columns)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> io::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(io::Error::from)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.writer.flush()
    }
}

pub fn write_json<T: Serialize>(path: Option<&Path>, meta: &Value, body: &T) -> io::Result<()> {
    let mut out = open(path)?;
    let doc = json!({ "meta": meta, "data": body });
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()
}

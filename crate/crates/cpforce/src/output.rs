//! Record types and their CSV/JSON encodings.
//!
//! JSON numbers use the shortest representation that parses back to the
//! same `f64`, so a re-read record reproduces every input bit. CSV carries
//! 12 significant digits in scientific notation; Rust's float formatting
//! never consults the locale.

use std::io::{self, Write};

use cpforce_core::{ForceResult, Regime};
use serde::{Deserialize, Serialize};

pub const CSV_COLUMNS: [&str; 7] = ["t", "d", "a", "x0", "force", "force_reduced", "regime"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t: f64,
    pub d: f64,
    pub a: f64,
    pub x0: f64,
    pub force: f64,
    pub force_reduced: f64,
    pub regime: String,
}

impl SweepRecord {
    pub fn from_result(result: &ForceResult) -> Self {
        let c = &result.config;
        SweepRecord {
            t: c.t(),
            d: c.d(),
            a: c.a(),
            x0: c.x0(),
            force: result.force,
            force_reduced: result.force_reduced,
            regime: result.regime.tag().to_owned(),
        }
    }

    pub fn regime(&self) -> Option<Regime> {
        match self.regime.as_str() {
            "pre" => Some(Regime::PreBackReaction),
            "post" => Some(Regime::PostBackReaction),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticRecord {
    pub d: f64,
    pub k0: f64,
    pub mu: f64,
    pub x0: f64,
    pub force: f64,
    pub force_reduced: f64,
}

/// A sweep plus the parameters shared by all of its rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub k0: f64,
    pub mu: f64,
    pub guard_band: f64,
    /// Grid points dropped because they fell inside the guard band.
    pub skipped: usize,
    pub records: Vec<SweepRecord>,
}

fn sci12(value: f64) -> String {
    format!("{value:.11e}")
}

pub fn write_csv<W: Write>(mut out: W, doc: &SweepDocument) -> io::Result<()> {
    writeln!(out, "# k0={}", doc.k0)?;
    writeln!(out, "# mu={}", doc.mu)?;
    writeln!(out, "# guard_band={}", doc.guard_band)?;
    writeln!(out, "# skipped={}", doc.skipped)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in &doc.records {
        w.write_record([
            sci12(r.t),
            sci12(r.d),
            sci12(r.a),
            sci12(r.x0),
            sci12(r.force),
            sci12(r.force_reduced),
            r.regime.clone(),
        ])?;
    }
    w.flush()
}

/// Single-row CSV for `force`, sharing the sweep layout.
pub fn write_record_csv<W: Write>(
    out: W,
    k0: f64,
    mu: f64,
    guard_band: f64,
    record: &SweepRecord,
) -> io::Result<()> {
    let doc = SweepDocument {
        k0,
        mu,
        guard_band,
        skipped: 0,
        records: vec![record.clone()],
    };
    write_csv(out, &doc)
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}

/// Reads back a CSV written by [`write_csv`], ignoring the `#` header block.
pub fn read_csv_records(text: &str) -> Result<Vec<SweepRecord>, csv::Error> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader.deserialize().collect()
}

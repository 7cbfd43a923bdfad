//! Table and JSON writers shared by all subcommands.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Resolves the output format from the flag, then the file extension.
pub fn resolve_format(flag: Option<Format>, path: Option<&Path>) -> Format {
    flag.unwrap_or_else(|| match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Csv,
    })
}

/// Full-precision rendering used in every CSV cell.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub metadata: &'a Value,
    pub data: &'a T,
}

pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path: path.filter(|p| p.as_os_str() != "-") }
    }

    fn open(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn write_csv(&self, table: &Table) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(self.open()?);
        w.write_record(&table.header)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    pub fn write_json<T: Serialize>(&self, metadata: &Value, data: &T) -> io::Result<()> {
        let mut out = self.open()?;
        serde_json::to_writer_pretty(&mut out, &Envelope { metadata, data })?;
        writeln!(out)?;
        out.flush()
    }
}

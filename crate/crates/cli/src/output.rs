//! Deterministic JSON and CSV emission.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for the CSV rendering.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }
}

pub struct Output {
    pub json: Value,
    pub table: Table,
}

pub fn emit(out: &Output, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            // serde_json maps are ordered by key, so this is stable.
            serde_json::to_writer_pretty(&mut lock, &out.json)?;
            writeln!(lock)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(lock);
            w.write_record(&out.table.header)?;
            for row in &out.table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

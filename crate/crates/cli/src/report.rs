use std::path::Path;

use anyhow::Result;
use popsales::ingestion::{format_float, write_table, Table};

/// Ordered key/value lines printed to stdout and saved as `key,value`.
#[derive(Debug, Default)]
pub struct Summary {
    title: String,
    rows: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Summary {
    pub fn new(title: impl Into<String>) -> Self {
        Summary {
            title: title.into(),
            ..Summary::default()
        }
    }

    pub fn add(&mut self, key: impl Into<String>, value: impl ToString) {
        self.rows.push((key.into(), value.to_string()));
    }

    pub fn num(&mut self, key: impl Into<String>, value: f64) {
        self.add(key, format_float(value));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        log::info!("{note}");
        self.notes.push(note);
    }

    pub fn print(&self) {
        println!("{}", self.title);
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.rows {
            println!("  {k:<width$}  {v}");
        }
        for n in &self.notes {
            println!("  note: {n}");
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut t = Table::new(["key", "value"]);
        for (k, v) in &self.rows {
            t.push(vec![k.clone(), v.clone()]);
        }
        for n in &self.notes {
            t.push(vec!["note".into(), n.clone()]);
        }
        write_table(path, &t)?;
        Ok(())
    }
}

pub fn opt_float(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

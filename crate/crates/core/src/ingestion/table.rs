use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};

/// A header plus string cells; the common shape of every file written here.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        csv::ErrorKind::Utf8 { err, .. } => Error::Parse {
            path: path.to_path_buf(),
            line,
            reason: format!("invalid UTF-8 text: {err}"),
        },
        other => Error::Parse {
            path: path.to_path_buf(),
            line,
            reason: format!("{other:?}"),
        },
    }
}

pub fn write_table(path: impl AsRef<Path>, table: &Table) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
    w.write_record(&table.header).map_err(|e| csv_error(path, e))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads any file with a header row. An empty file is a schema error.
pub fn read_table(path: impl AsRef<Path>) -> Result<Table> {
    Ok(read_table_with_lines(path.as_ref())?.0)
}

/// Same as [`read_table`], also returning the 1-based line of each row.
pub(crate) fn read_table_with_lines(path: &Path) -> Result<(Table, Vec<u64>)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut records = r.records();
    let header = match records.next() {
        None => {
            return Err(Error::Schema {
                path: path.to_path_buf(),
                reason: "file is empty, expected a header row".into(),
            })
        }
        Some(rec) => rec.map_err(|e| csv_error(path, e))?,
    };
    let mut table = Table::new(header.iter());
    let mut lines = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() == 1 && rec.get(0) == Some("") {
            continue;
        }
        if rec.len() != table.header.len() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                reason: format!("expected {} fields, found {}", table.header.len(), rec.len()),
            });
        }
        table.rows.push(rec.iter().map(str::to_owned).collect());
        lines.push(line);
    }
    Ok((table, lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["x, y".into(), "1".into()]);
        write_table(&p, &t).unwrap();
        assert_eq!(read_table(&p).unwrap(), t);

        std::fs::write(&p, "").unwrap();
        assert!(matches!(read_table(&p), Err(Error::Schema { .. })));
    }

    #[test]
    fn ragged_row_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        std::fs::write(&p, "a,b\n1,2\n3\n").unwrap();
        let err = read_table(&p).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}

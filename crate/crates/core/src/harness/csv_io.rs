//! CSV emission. Every column is an `f64` written with 17 significant
//! digits, so a file reads back bit-exactly.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// A fixed-width row of numbers with named columns.
pub trait CsvRow: Sized {
    const HEADER: &'static [&'static str];

    fn fields(&self) -> Vec<f64>;

    /// Inverse of [`CsvRow::fields`]; `values.len() == HEADER.len()`.
    fn from_fields(values: &[f64]) -> Self;
}

pub fn format_value(v: f64) -> String {
    // Adding 0.0 folds -0.0 into 0.0.
    let v = v + 0.0;
    format!("{v:.16e}")
}

/// Header plus one line per row, `\n`-terminated.
pub fn write_csv_to<R: CsvRow, W: Write>(rows: &[R], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(R::HEADER)?;
    for row in rows {
        w.write_record(row.fields().into_iter().map(format_value))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv<R: CsvRow>(rows: &[R], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_to(rows, std::io::BufWriter::new(file)).map_err(|e| Error::csv(path, e))
}

/// Parse a file written by [`emit_csv`]. The header must match exactly.
pub fn read_csv<R: CsvRow>(path: impl AsRef<Path>) -> Result<Vec<R>> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
    let header = rdr.headers().map_err(|e| Error::csv(path, e))?.clone();
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(Error::invalid(
            "csv header",
            format!("{}: expected {:?}", path.display(), R::HEADER),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::csv(path, e))?;
        let values = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::invalid("csv value", format!("{}: {s:?}", path.display())))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(R::from_fields(&values));
    }
    Ok(rows)
}

//! CSV rendering of sweep tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::sweep::{Cell, Table};
use crate::AppError;

/// Twelve significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Empty => String::new(),
        Cell::Num(v) => format_number(*v),
        Cell::Text(s) => s.clone(),
    }
}

/// Header line, then one line per row, each terminated by `\n`.
pub fn write_csv<W: Write>(table: &Table, mut out: W) -> io::Result<()> {
    let header: Vec<&str> = table.columns.iter().map(|c| c.name()).collect();
    writeln!(out, "{}", header.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(cell_text).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}

pub fn write_csv_file(table: &Table, path: &Path) -> Result<(), AppError> {
    let io_err = |source| AppError::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io_err)?;
    write_csv(table, BufWriter::new(file)).map_err(io_err)
}

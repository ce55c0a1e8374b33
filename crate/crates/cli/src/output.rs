//! Table emission: JSON lines (one object per row), or CSV/TSV with
//! RFC-style quoting. Field order is fixed by the row structs, so identical
//! invocations produce byte-identical output.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Tsv,
}

/// A row type that knows its column headers and its cell rendering for the
/// delimited formats.
pub trait Tabular: Serialize {
    const HEADERS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn escape(field: &str, delimiter: char) -> String {
    if field.contains([delimiter, '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn emit<T: Tabular>(rows: &[T], format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            for row in rows {
                println!("{}", serde_json::to_string(row).expect("row serializes"));
            }
        }
        OutputFormat::Csv => emit_delimited(rows, ','),
        OutputFormat::Tsv => emit_delimited(rows, '\t'),
    }
}

fn emit_delimited<T: Tabular>(rows: &[T], delimiter: char) {
    let header: Vec<String> = T::HEADERS.iter().map(|h| escape(h, delimiter)).collect();
    println!("{}", header.join(&delimiter.to_string()));
    for row in rows {
        let cells: Vec<String> = row.cells().iter().map(|c| escape(c, delimiter)).collect();
        println!("{}", cells.join(&delimiter.to_string()));
    }
}

/// Render an optional cell; absent values become the empty field.
pub fn opt_cell<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escaping_quotes_and_delimiters() {
        assert_eq!(escape("plain", ','), "plain");
        assert_eq!(escape("a,b", ','), "\"a,b\"");
        assert_eq!(escape("say \"hi\"", ','), "\"say \"\"hi\"\"\"");
        assert_eq!(escape("a,b", '\t'), "a,b");
        assert_eq!(escape("a\tb", '\t'), "\"a\tb\"");
    }
}

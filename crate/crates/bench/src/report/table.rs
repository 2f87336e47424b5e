//! Size × cipher timing tables.

use std::collections::BTreeSet;
use std::fmt::Write;

use cipherbench_core::{CipherId, Family, ModeId};

use super::ReportError;
use crate::harness::BenchResult;

const SIZE_HEADER: &str = "Size (MB)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

/// Median elapsed seconds, one row per size and one column per cipher.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub title: String,
    pub row_labels: Vec<u64>,
    pub column_labels: Vec<String>,
    /// `cells[row][column]`.
    pub cells: Vec<Vec<f64>>,
}

pub fn table_title(mode: ModeId) -> String {
    match mode.family() {
        Family::Block => format!(
            "Block cipher execution time (s), {} mode",
            mode.token().to_uppercase()
        ),
        Family::Stream => "Stream cipher execution time (s)".to_string(),
    }
}

/// Builds the table for `mode` from whichever results use it. Sizes run
/// ascending and ciphers follow registry order; every (size, cipher) pair
/// present on either axis must have a result.
pub fn build_table(results: &[BenchResult], mode: ModeId) -> Result<ReportTable, ReportError> {
    let selected: Vec<&BenchResult> = results.iter().filter(|r| r.mode == mode).collect();
    let ciphers: BTreeSet<CipherId> = selected.iter().map(|r| r.cipher).collect();
    let sizes: BTreeSet<u64> = selected.iter().map(|r| r.size_mb).collect();

    let mut cells = Vec::with_capacity(sizes.len());
    for &size_mb in &sizes {
        let row = ciphers
            .iter()
            .map(|&cipher| {
                selected
                    .iter()
                    .find(|r| r.cipher == cipher && r.size_mb == size_mb)
                    .map(|r| r.median_s)
                    .ok_or(ReportError::IncompleteGrid { cipher, size_mb })
            })
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(row);
    }
    Ok(ReportTable {
        title: table_title(mode),
        row_labels: sizes.into_iter().collect(),
        column_labels: ciphers.iter().map(|c| c.label().to_string()).collect(),
        cells,
    })
}

pub fn render_table(
    results: &[BenchResult],
    mode: ModeId,
    format: TableFormat,
) -> Result<String, ReportError> {
    let table = build_table(results, mode)?;
    Ok(match format {
        TableFormat::Markdown => table.to_markdown(),
        TableFormat::Csv => table.to_csv(),
    })
}

fn cell(v: f64) -> String {
    format!("{v:.6}")
}

impl ReportTable {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n| {SIZE_HEADER} |", self.title);
        for label in &self.column_labels {
            write!(out, " {label} |").unwrap();
        }
        out.push_str("\n|---:|");
        out.push_str(&"---:|".repeat(self.column_labels.len()));
        out.push('\n');
        for (size, row) in self.row_labels.iter().zip(&self.cells) {
            write!(out, "| {size} |").unwrap();
            for &v in row {
                write!(out, " {} |", cell(v)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("size_mb");
        for label in &self.column_labels {
            write!(out, ",{label}").unwrap();
        }
        out.push('\n');
        for (size, row) in self.row_labels.iter().zip(&self.cells) {
            out.push_str(&size.to_string());
            for &v in row {
                write!(out, ",{}", cell(v)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// The rendered text of one cell.
    pub fn cell_text(&self, size_mb: u64, column_label: &str) -> Option<String> {
        let r = self.row_labels.iter().position(|&s| s == size_mb)?;
        let c = self.column_labels.iter().position(|l| l == column_label)?;
        Some(cell(self.cells[r][c]))
    }
}

/// Reads back every timing table in markdown produced by
/// [`ReportTable::to_markdown`]; other markdown is skipped.
pub fn parse_markdown_tables(text: &str) -> Result<Vec<ReportTable>, ReportError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut tables = Vec::new();
    let mut title = String::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim();
        if let Some(t) = line.strip_prefix("### ") {
            title = t.to_string();
            i += 1;
            continue;
        }
        let header = split_row(line);
        if header.first().map(String::as_str) != Some(SIZE_HEADER) {
            i += 1;
            continue;
        }
        let err = |line: usize, message: String| ReportError::Markdown {
            line: line + 1,
            message,
        };
        let column_labels = header[1..].to_vec();
        match lines.get(i + 1) {
            Some(sep) if sep.trim().starts_with("|-") => {}
            _ => return Err(err(i + 1, "missing separator row".into())),
        }
        i += 2;
        let mut row_labels = Vec::new();
        let mut cells = Vec::new();
        while i < lines.len() && lines[i].trim().starts_with('|') {
            let fields = split_row(lines[i].trim());
            if fields.len() != column_labels.len() + 1 {
                return Err(err(
                    i,
                    format!(
                        "expected {} cells, found {}",
                        column_labels.len() + 1,
                        fields.len()
                    ),
                ));
            }
            row_labels.push(
                fields[0]
                    .parse()
                    .map_err(|e| err(i, format!("size {:?}: {e}", fields[0])))?,
            );
            let row = fields[1..]
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| err(i, format!("cell {f:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cells.push(row);
            i += 1;
        }
        tables.push(ReportTable {
            title: std::mem::take(&mut title),
            row_labels,
            column_labels,
            cells,
        });
    }
    Ok(tables)
}

fn split_row(line: &str) -> Vec<String> {
    let Some(inner) = line.strip_prefix('|').and_then(|l| l.strip_suffix('|')) else {
        return Vec::new();
    };
    inner.split('|').map(|f| f.trim().to_string()).collect()
}

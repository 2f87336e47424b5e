//! CSV export, timing tables, ranking summaries and plot series.

pub mod csv;
pub mod plot;
pub mod summary;
pub mod table;

use cipherbench_core::CipherId;

pub use self::csv::{parse_results_csv, results_to_csv, CSV_HEADER};
pub use plot::{plot_series, render_plot, Series};
pub use summary::{comparison_summary, ComparisonSummary, SummaryEntry};
pub use table::{build_table, parse_markdown_tables, render_table, ReportTable, TableFormat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("line {line}: expected header `{expected}`, found `{found}`", expected = CSV_HEADER)]
    Header { line: u64, found: String },
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("line {line}, column {column}: {message}")]
    Column {
        line: u64,
        column: &'static str,
        message: String,
    },
    #[error("incomplete grid: no {cipher} result at {size_mb} MB")]
    IncompleteGrid { cipher: CipherId, size_mb: u64 },
    #[error("markdown table, line {line}: {message}")]
    Markdown { line: usize, message: String },
}

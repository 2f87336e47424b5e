//! Per-sample CSV export and import.

use std::collections::BTreeMap;

use cipherbench_core::{check_mode, CipherId, ModeId};

use super::ReportError;
use crate::harness::{BenchResult, Sample};

pub const CSV_HEADER: &str =
    "cipher,mode,size_mb,run_index,elapsed_s,throughput_mb_s,peak_rss_bytes";
const COLUMNS: [&str; 7] = [
    "cipher",
    "mode",
    "size_mb",
    "run_index",
    "elapsed_s",
    "throughput_mb_s",
    "peak_rss_bytes",
];

// Stored throughput is recomputed on import; anything further off than
// this was not produced by `size_mb / elapsed_s`.
const THROUGHPUT_REL_TOL: f64 = 1e-9;

/// One row per sample, ordered by (cipher, mode, size, run). The
/// throughput column is the per-sample `size_mb / elapsed_s`.
pub fn results_to_csv(results: &[BenchResult]) -> String {
    let mut rows: Vec<(&BenchResult, &Sample)> = results
        .iter()
        .flat_map(|r| r.samples.iter().map(move |s| (r, s)))
        .collect();
    rows.sort_by_key(|(r, s)| (r.cipher, r.mode, r.size_mb, s.run_index));

    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(COLUMNS).expect("write to memory");
    for (r, s) in rows {
        let peak = s.peak_rss_bytes.map(|p| p.to_string()).unwrap_or_default();
        w.write_record([
            r.cipher.token().to_string(),
            r.mode.token().to_string(),
            r.size_mb.to_string(),
            s.run_index.to_string(),
            s.elapsed_s.to_string(),
            (r.size_mb as f64 / s.elapsed_s).to_string(),
            peak,
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

/// Parses [`results_to_csv`] output back into results, one per
/// (cipher, mode, size). Errors name the offending line and column.
pub fn parse_results_csv(text: &str) -> Result<Vec<BenchResult>, ReportError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    match records.next() {
        None => return Ok(Vec::new()),
        Some(Err(e)) => return Err(row_error(1, &e)),
        Some(Ok(header)) => {
            if header.iter().ne(COLUMNS) {
                return Err(ReportError::Header {
                    line: 1,
                    found: header.iter().collect::<Vec<_>>().join(","),
                });
            }
        }
    }

    let mut groups: BTreeMap<(CipherId, ModeId, u64), Vec<Sample>> = BTreeMap::new();
    for record in records {
        let record = record.map_err(|e| row_error(e.position().map_or(0, |p| p.line()), &e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != COLUMNS.len() {
            return Err(ReportError::Row {
                line,
                message: format!("expected {} fields, found {}", COLUMNS.len(), record.len()),
            });
        }
        let col = |i: usize, message: String| ReportError::Column {
            line,
            column: COLUMNS[i],
            message,
        };
        let field = |i: usize| record.get(i).unwrap_or("");
        let cipher: CipherId = field(0).parse().map_err(|e| col(0, format!("{e}")))?;
        let mode: ModeId = field(1).parse().map_err(|e| col(1, format!("{e}")))?;
        check_mode(cipher, mode).map_err(|e| col(1, e.to_string()))?;
        let size_mb: u64 = parse_num(field(2)).map_err(|m| col(2, m))?;
        if size_mb == 0 {
            return Err(col(2, "size must be positive".into()));
        }
        let run_index: u32 = parse_num(field(3)).map_err(|m| col(3, m))?;
        let elapsed_s: f64 = parse_num(field(4)).map_err(|m| col(4, m))?;
        if !(elapsed_s.is_finite() && elapsed_s > 0.0) {
            return Err(col(
                4,
                format!("elapsed time must be positive, got {elapsed_s}"),
            ));
        }
        let throughput: f64 = parse_num(field(5)).map_err(|m| col(5, m))?;
        let expected = size_mb as f64 / elapsed_s;
        if (throughput - expected).abs() > THROUGHPUT_REL_TOL * expected {
            return Err(col(
                5,
                format!("{throughput} does not equal size_mb / elapsed_s = {expected}"),
            ));
        }
        let peak_rss_bytes = match field(6) {
            "" => None,
            s => Some(parse_num::<u64>(s).map_err(|m| col(6, m))?),
        };

        let samples = groups.entry((cipher, mode, size_mb)).or_default();
        if samples.iter().any(|s| s.run_index == run_index) {
            return Err(col(
                3,
                format!("duplicate run {run_index} for {cipher} {mode} {size_mb} MB"),
            ));
        }
        samples.push(Sample {
            run_index,
            elapsed_s,
            peak_rss_bytes,
        });
    }

    Ok(groups
        .into_iter()
        .map(|((cipher, mode, size_mb), mut samples)| {
            samples.sort_by_key(|s| s.run_index);
            BenchResult::from_samples(cipher, mode, size_mb, samples)
        })
        .collect())
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse().map_err(|e| format!("{s:?}: {e}"))
}

fn row_error(line: u64, e: &csv::Error) -> ReportError {
    ReportError::Row {
        line,
        message: e.to_string(),
    }
}

//! Throughput-by-size series as plain tab-separated text.

use std::collections::BTreeMap;
use std::fmt::Write;

use cipherbench_core::{CipherId, ModeId};

use crate::harness::BenchResult;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub cipher: CipherId,
    /// `(size_mb, throughput_mb_s)`, sizes ascending.
    pub points: Vec<(u64, f64)>,
}

pub fn plot_series(results: &[BenchResult], mode: ModeId) -> Vec<Series> {
    let mut by_cipher: BTreeMap<CipherId, Vec<(u64, f64)>> = BTreeMap::new();
    for r in results.iter().filter(|r| r.mode == mode) {
        by_cipher
            .entry(r.cipher)
            .or_default()
            .push((r.size_mb, r.throughput_mb_s));
    }
    by_cipher
        .into_iter()
        .map(|(cipher, mut points)| {
            points.sort_by_key(|p| p.0);
            Series { cipher, points }
        })
        .collect()
}

/// One block per series: a `# <cipher>` line, a column header, then the
/// points. Blocks are separated by a blank line.
pub fn render_plot(mode: ModeId, series: &[Series]) -> String {
    let mut out = String::new();
    for (i, s) in series.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "# {} ({})", s.cipher, mode).unwrap();
        out.push_str("size_mb\tthroughput_mb_s\n");
        for (size, t) in &s.points {
            writeln!(out, "{size}\t{t:.6}").unwrap();
        }
    }
    out
}

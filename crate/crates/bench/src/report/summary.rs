//! Throughput rankings across ciphers.

use std::collections::BTreeMap;

use cipherbench_core::{CipherId, Family, ModeId};

use crate::harness::BenchResult;
use crate::stats::mean;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryEntry {
    pub cipher: CipherId,
    pub mode: ModeId,
    /// Mean over sizes of `size_mb / median_s`.
    pub mean_throughput_mb_s: f64,
}

/// Entries are ranked fastest first; equal throughputs keep registry order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSummary {
    pub ranking: Vec<SummaryEntry>,
}

pub fn comparison_summary(results: &[BenchResult]) -> ComparisonSummary {
    let mut groups: BTreeMap<(CipherId, ModeId), Vec<f64>> = BTreeMap::new();
    for r in results {
        groups
            .entry((r.cipher, r.mode))
            .or_default()
            .push(r.throughput_mb_s);
    }
    let mut ranking: Vec<SummaryEntry> = groups
        .into_iter()
        .map(|((cipher, mode), t)| SummaryEntry {
            cipher,
            mode,
            mean_throughput_mb_s: mean(&t).expect("non-empty group"),
        })
        .collect();
    // Stable sort over registry-ordered input gives the tie rule.
    ranking.sort_by(|a, b| b.mean_throughput_mb_s.total_cmp(&a.mean_throughput_mb_s));
    ComparisonSummary { ranking }
}

impl ComparisonSummary {
    pub fn entry(&self, cipher: CipherId, mode: ModeId) -> Option<&SummaryEntry> {
        self.ranking
            .iter()
            .find(|e| e.cipher == cipher && e.mode == mode)
    }

    /// `throughput(a) / throughput(b)`.
    pub fn ratio(&self, a: (CipherId, ModeId), b: (CipherId, ModeId)) -> Option<f64> {
        let ta = self.entry(a.0, a.1)?.mean_throughput_mb_s;
        let tb = self.entry(b.0, b.1)?.mean_throughput_mb_s;
        Some(ta / tb)
    }

    /// `matrix[i][j]` is the ratio of ranking entry i to entry j.
    pub fn ratio_matrix(&self) -> Vec<Vec<f64>> {
        self.ranking
            .iter()
            .map(|a| {
                self.ranking
                    .iter()
                    .map(|b| a.mean_throughput_mb_s / b.mean_throughput_mb_s)
                    .collect()
            })
            .collect()
    }

    pub fn fastest_overall(&self) -> Option<CipherId> {
        self.ranking.first().map(|e| e.cipher)
    }

    pub fn fastest_block(&self) -> Option<CipherId> {
        self.block_entries().next().map(|e| e.cipher)
    }

    pub fn slowest_block(&self) -> Option<CipherId> {
        self.block_entries().last().map(|e| e.cipher)
    }

    fn block_entries(&self) -> impl Iterator<Item = &SummaryEntry> {
        self.ranking
            .iter()
            .filter(|e| e.cipher.family() == Family::Block)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("### Throughput ranking\n\n| Rank | Cipher | Mode | Mean throughput (MB/s) |\n|---:|---|---|---:|\n");
        for (i, e) in self.ranking.iter().enumerate() {
            out.push_str(&format!(
                "| {} | {} | {} | {:.6} |\n",
                i + 1,
                e.cipher,
                e.mode,
                e.mean_throughput_mb_s
            ));
        }
        out
    }
}

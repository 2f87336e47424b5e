//! Reporting over the bundled transcribed timings.

use cipherbench_bench::fixtures::{Device, ReferenceFixture};
use cipherbench_bench::report::{
    build_table, comparison_summary, parse_markdown_tables, plot_series,
};
use cipherbench_core::{CipherId, ModeId};

fn cell(f: ReferenceFixture, cipher: CipherId, size_mb: u64) -> f64 {
    f.results()
        .into_iter()
        .find(|r| r.cipher == cipher && r.size_mb == size_mb)
        .unwrap()
        .median_s
}

#[test]
fn aes_ecb_pi3_throughput_at_128mb() {
    let r = ReferenceFixture::Pi3Ecb
        .results()
        .into_iter()
        .find(|r| r.cipher == CipherId::Aes256 && r.size_mb == 128)
        .unwrap();
    assert_eq!(r.median_s, 67.51322);
    assert!(
        (r.throughput_mb_s - 1.896).abs() < 5e-4,
        "{}",
        r.throughput_mb_s
    );
}

#[test]
fn pi3_ecb_table_rerenders_exactly() {
    let f = ReferenceFixture::Pi3Ecb;
    let table = build_table(&f.results(), ModeId::Ecb).unwrap();
    assert_eq!(table.cell_text(1, "AES").unwrap(), "0.312512");
    let parsed = parse_markdown_tables(&table.to_markdown()).unwrap();
    assert_eq!(parsed.len(), 1);
    assert_eq!(parsed[0].to_markdown(), table.to_markdown());
    assert_eq!(
        parsed[0].column_labels,
        ["AES", "DES", "Triple-DES", "Blowfish", "Twofish", "RC2"]
    );
    assert_eq!(parsed[0].row_labels, [1, 2, 4, 8, 16, 32, 64, 128]);
}

#[test]
fn pi3_ecb_3des_over_des_at_128mb() {
    let f = ReferenceFixture::Pi3Ecb;
    let ratio = cell(f, CipherId::TripleDes, 128) / cell(f, CipherId::Des, 128);
    assert!((ratio - 1.3018).abs() < 1e-4, "{ratio}");
    let row: Vec<_> = f
        .results()
        .into_iter()
        .filter(|r| r.size_mb == 128)
        .collect();
    let s = comparison_summary(&row);
    let pos = |c| s.ranking.iter().position(|e| e.cipher == c).unwrap();
    assert!(pos(CipherId::Des) < pos(CipherId::TripleDes));
}

#[test]
fn pi3_ecb_twofish_ranks_first() {
    let s = comparison_summary(&ReferenceFixture::Pi3Ecb.comparison_results());
    assert_eq!(s.ranking[0].cipher, CipherId::Twofish);
    assert_eq!(s.ranking.len(), 6);
}

#[test]
fn pi3_aes_doubling_ratio() {
    let f = ReferenceFixture::Pi3Ecb;
    let ratio = cell(f, CipherId::Aes256, 2) / cell(f, CipherId::Aes256, 1);
    assert!((ratio - 2.0005).abs() < 1e-4, "{ratio}");
}

#[test]
fn pi3_stream_chacha_beats_rc4_at_every_size() {
    let series = plot_series(&ReferenceFixture::Pi3Stream.results(), ModeId::Stream);
    assert_eq!(series.len(), 2);
    let (rc4, chacha) = (&series[0], &series[1]);
    assert_eq!(
        (rc4.cipher, chacha.cipher),
        (CipherId::Rc4, CipherId::ChaCha20)
    );
    for (a, b) in rc4.points.iter().zip(&chacha.points) {
        assert_eq!(a.0, b.0);
        assert!(b.1 >= a.1, "{} MB", a.0);
    }
}

#[test]
fn conclusions_hold_per_device() {
    for device in [Device::RaspberryPi3, Device::BeagleBoneBlack] {
        let mut all = Vec::new();
        for f in ReferenceFixture::for_device(device) {
            let rs = f.comparison_results();
            let s = comparison_summary(&rs);
            if f.mode() == ModeId::Stream {
                assert_eq!(
                    s.fastest_overall(),
                    Some(CipherId::ChaCha20),
                    "{}",
                    f.name()
                );
            } else {
                assert_eq!(s.fastest_block(), Some(CipherId::Twofish), "{}", f.name());
                assert_eq!(s.slowest_block(), Some(CipherId::TripleDes), "{}", f.name());
            }
            all.extend(rs);
        }
        assert_eq!(
            comparison_summary(&all).fastest_overall(),
            Some(CipherId::ChaCha20)
        );
    }
}

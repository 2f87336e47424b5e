//! Acceptance gate: one pass/fail line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the timing
//! criteria execute alone and in order.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cipherbench::commands::{cmd_vectors, render_report};
use cipherbench::ReportFormat;
use cipherbench_bench::fixtures::{Device, ReferenceFixture};
use cipherbench_bench::report::{
    comparison_summary, parse_markdown_tables, parse_results_csv, results_to_csv,
};
use cipherbench_bench::{
    generate_workload, run_case, run_suite, BenchConfig, BenchResult, RunOptions, Sample, MIB,
};
use cipherbench_core::stream::{quarter_round, Rc4};
use cipherbench_core::{
    kat, modes, schedule, stream_xor, validate_key, CipherId, KeyMaterial, ModeId,
};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })?;
    Ok(elapsed)
}

fn random_key(cipher: CipherId, rng: &mut ChaCha8Rng) -> KeyMaterial {
    let mut bytes = vec![0u8; cipher.key_len()];
    rng.fill_bytes(&mut bytes);
    validate_key(cipher, &bytes).unwrap()
}

fn combos() -> Vec<(CipherId, ModeId)> {
    CipherId::ALL
        .into_iter()
        .flat_map(|c| c.modes().iter().map(move |&m| (c, m)))
        .collect()
}

fn known_answers() -> Outcome {
    let start = Instant::now();
    let mut out = Vec::new();
    let passed = cmd_vectors(&mut out).map_err(|e| e.to_string())?;
    let text = String::from_utf8(out).unwrap();
    ensure(passed, || format!("vector mismatch:\n{text}"))?;
    for cipher in CipherId::ALL {
        let n = kat::VECTORS.iter().filter(|v| v.cipher == cipher).count();
        ensure(n >= 2, || format!("{cipher} has only {n} vectors"))?;
    }
    let sections = text.lines().filter(|l| l.contains(" PASS (")).count();
    ensure(sections == 8, || format!("{sections} cipher sections"))?;
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!(
        "{} vectors, 8 ciphers, {t:.2?}",
        kat::VECTORS.len()
    ))
}

fn roundtrip(key: &KeyMaterial, mode: ModeId, iv: &[u8], data: &[u8]) -> Result<Vec<u8>, String> {
    let e = |e: cipherbench_core::CipherError| e.to_string();
    match mode {
        ModeId::Ecb => {
            let inst = schedule(key).map_err(e)?;
            modes::ecb_decrypt(&inst, &modes::ecb_encrypt(&inst, data)).map_err(e)
        }
        ModeId::Cbc => {
            let inst = schedule(key).map_err(e)?;
            let iv = &iv[..inst.block_size()];
            modes::cbc_decrypt(&inst, iv, &modes::cbc_encrypt(&inst, iv, data).map_err(e)?)
                .map_err(e)
        }
        ModeId::Stream => {
            let nonce = (key.cipher() == CipherId::ChaCha20).then_some(&iv[..12]);
            let ct = stream_xor(key, nonce, data).map_err(e)?;
            stream_xor(key, nonce, &ct).map_err(e)
        }
    }
}

fn properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0002);
    let combos = combos();
    ensure(combos.len() == 14, || {
        format!("{} combinations", combos.len())
    })?;
    for &(cipher, mode) in &combos {
        for case in 0..1000 {
            let key = random_key(cipher, &mut rng);
            let mut iv = [0u8; 16];
            rng.fill_bytes(&mut iv);
            let mut data = vec![0u8; rng.gen_range(0..=1024)];
            rng.fill_bytes(&mut data);
            let back = roundtrip(&key, mode, &iv, &data)?;
            ensure(back == data, || {
                format!("{cipher} {mode} case {case} did not round-trip")
            })?;
        }
    }

    let mut rc4 = Rc4::new(&random_key(CipherId::Rc4, &mut rng)).map_err(|e| e.to_string())?;
    rc4.keystream(10_000);
    let mut s = *rc4.permutation();
    s.sort_unstable();
    ensure(s.iter().enumerate().all(|(i, &v)| v as usize == i), || {
        "RC4 S-array is not a permutation after 10^4 bytes".into()
    })?;
    ensure(quarter_round(0, 0, 0, 0) == (0, 0, 0, 0), || {
        "quarter round of zeros".into()
    })?;

    let t = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "14 x 1000 round-trips, RC4 permutation, zero quarter round, {t:.2?}"
    ))
}

fn structural_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    let block = |key: &KeyMaterial, pt: &[u8]| schedule(key).unwrap().encrypt_block(pt).unwrap();
    for case in 0..256 {
        let mut k = [0u8; 8];
        let mut p = [0u8; 8];
        rng.fill_bytes(&mut k);
        rng.fill_bytes(&mut p);
        let c = block(&validate_key(CipherId::Des, &k).unwrap(), &p);
        let nk = k.map(|b| !b);
        let np = p.map(|b| !b);
        let nc = block(&validate_key(CipherId::Des, &nk).unwrap(), &np);
        ensure(nc.iter().zip(&c).all(|(a, b)| *a == !*b), || {
            format!("complementation case {case}")
        })?;
    }
    for case in 0..256 {
        let mut k = [0u8; 8];
        let mut p = [0u8; 8];
        rng.fill_bytes(&mut k);
        rng.fill_bytes(&mut p);
        let kkk: Vec<u8> = k.iter().chain(&k).chain(&k).copied().collect();
        let single = block(&validate_key(CipherId::Des, &k).unwrap(), &p);
        let triple = block(&validate_key(CipherId::TripleDes, &kkk).unwrap(), &p);
        ensure(single == triple, || format!("k||k||k case {case}"))?;
    }
    for cipher in CipherId::BLOCK {
        for case in 0..64 {
            let inst = schedule(&random_key(cipher, &mut rng)).unwrap();
            let b = inst.block_size();
            let mut data = vec![0u8; b * 3];
            rng.fill_bytes(&mut data);
            let ecb = modes::ecb_encrypt(&inst, &data);
            let cbc = modes::cbc_encrypt(&inst, &vec![0u8; b], &data).unwrap();
            ensure(ecb[..b] == cbc[..b], || {
                format!("{cipher} CBC/ECB first block, case {case}")
            })?;
        }
    }
    Ok("DES complementation x256, k||k||k x256, zero-IV CBC = ECB for 6 ciphers".into())
}

fn triple_des_ratio() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let workload = generate_workload(8 * MIB, 4);
    let opts = RunOptions::default();
    let des = run_case(
        &random_key(CipherId::Des, &mut rng),
        ModeId::Ecb,
        &workload,
        &opts,
    )
    .map_err(|e| e.to_string())?;
    let tdes = run_case(
        &random_key(CipherId::TripleDes, &mut rng),
        ModeId::Ecb,
        &workload,
        &opts,
    )
    .map_err(|e| e.to_string())?;
    let ratio = tdes.throughput_mb_s / des.throughput_mb_s;
    ensure(ratio > 0.20 && ratio < 0.50, || {
        format!("3DES/DES throughput ratio {ratio:.4}")
    })?;
    Ok(format!(
        "3DES/DES throughput {ratio:.4} ({:.1} vs {:.1} MB/s)",
        tdes.throughput_mb_s, des.throughput_mb_s
    ))
}

fn linear_scaling() -> Outcome {
    let start = Instant::now();
    let config = BenchConfig {
        sizes_mb: vec![1, 2, 4, 8],
        repeats: 5,
        ..BenchConfig::default()
    };
    let results = run_suite(&config).map_err(|e| e.to_string())?;
    ensure(results.len() == 14 * 4, || {
        format!("{} results", results.len())
    })?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (cipher, mode) in config.cases() {
        let times: Vec<&BenchResult> = results
            .iter()
            .filter(|r| r.cipher == cipher && r.mode == mode)
            .collect();
        for pair in times.windows(2) {
            let ratio = pair[1].median_s / pair[0].median_s;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            ensure((1.5..=2.8).contains(&ratio), || {
                format!(
                    "{cipher} {mode} {}->{} MB ratio {ratio:.3}",
                    pair[0].size_mb, pair[1].size_mb
                )
            })?;
        }
    }
    let t = within(Duration::from_secs(600), start)?;
    Ok(format!(
        "doubling ratios in [{lo:.3}, {hi:.3}], sweep {t:.2?}"
    ))
}

fn fixture_reproduction() -> Outcome {
    for f in ReferenceFixture::ALL {
        let transcribed = f.results();
        for (format, name) in [(ReportFormat::Md, "md"), (ReportFormat::Csv, "csv")] {
            let text =
                render_report(f.csv(), format).map_err(|e| format!("{}: {e:#}", f.name()))?;
            if name == "csv" {
                for r in &transcribed {
                    let row = text
                        .lines()
                        .find(|l| l.split(',').next() == Some(&r.size_mb.to_string()))
                        .ok_or_else(|| format!("{} csv: no {} MB row", f.name(), r.size_mb))?;
                    let expected = format!("{:.6}", r.median_s);
                    ensure(row.split(',').any(|c| c == expected), || {
                        format!(
                            "{} csv: {} {} MB cell missing {expected}",
                            f.name(),
                            r.cipher,
                            r.size_mb
                        )
                    })?;
                }
                continue;
            }
            let tables = parse_markdown_tables(&text).map_err(|e| e.to_string())?;
            ensure(tables.len() == 1, || {
                format!("{}: {} tables", f.name(), tables.len())
            })?;
            let table = &tables[0];
            ensure(table.row_labels == [1, 2, 4, 8, 16, 32, 64, 128], || {
                format!("{} rows", f.name())
            })?;
            for r in &transcribed {
                let got = table.cell_text(r.size_mb, r.cipher.label());
                let expected = format!("{:.6}", r.median_s);
                ensure(got.as_deref() == Some(expected.as_str()), || {
                    format!(
                        "{} {} {} MB: {got:?} != {expected}",
                        f.name(),
                        r.cipher,
                        r.size_mb
                    )
                })?;
            }
        }
    }

    for device in [Device::RaspberryPi3, Device::BeagleBoneBlack] {
        let mut combined = Vec::new();
        for f in ReferenceFixture::for_device(device) {
            let rs = f.comparison_results();
            let s = comparison_summary(&rs);
            if f.mode() == ModeId::Stream {
                ensure(s.fastest_overall() == Some(CipherId::ChaCha20), || {
                    format!(
                        "{}: fastest stream cipher {:?}",
                        f.name(),
                        s.fastest_overall()
                    )
                })?;
            } else {
                ensure(s.fastest_block() == Some(CipherId::Twofish), || {
                    format!("{}: fastest block cipher {:?}", f.name(), s.fastest_block())
                })?;
                ensure(s.slowest_block() == Some(CipherId::TripleDes), || {
                    format!("{}: slowest block cipher {:?}", f.name(), s.slowest_block())
                })?;
            }
            combined.extend(rs);
        }
        let s = comparison_summary(&combined);
        ensure(s.fastest_overall() == Some(CipherId::ChaCha20), || {
            format!("{device:?}: fastest overall {:?}", s.fastest_overall())
        })?;
    }
    Ok("6 fixtures re-rendered at 6 decimals; Twofish fastest, 3DES slowest, ChaCha20 fastest overall".into())
}

fn random_results(rng: &mut ChaCha8Rng) -> Vec<BenchResult> {
    let combos = combos();
    let mut results = Vec::new();
    for &(cipher, mode) in &combos {
        for size_mb in [1u64, 2, 4, 8, 16, 32, 64, 128, 250] {
            if !rng.gen_bool(0.15) {
                continue;
            }
            let samples = (0..rng.gen_range(1..=6))
                .map(|i| Sample {
                    run_index: i,
                    elapsed_s: rng.gen_range(1e-6..500.0),
                    peak_rss_bytes: rng.gen_bool(0.7).then(|| rng.gen_range(1..1u64 << 40)),
                })
                .collect();
            results.push(BenchResult::from_samples(cipher, mode, size_mb, samples));
        }
    }
    results
}

fn csv_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut rows = 0;
    for trial in 0..100 {
        let results = random_results(&mut rng);
        let first = results_to_csv(&results);
        let parsed = parse_results_csv(&first).map_err(|e| format!("trial {trial}: {e}"))?;
        let second = results_to_csv(&parsed);
        ensure(first == second, || {
            format!("trial {trial}: re-emitted CSV differs")
        })?;
        ensure(parsed == results, || {
            format!("trial {trial}: parsed results differ")
        })?;
        rows += first.lines().count() - 1;
    }
    Ok(format!("100 trials, {rows} rows, byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("known-answer vectors", known_answers),
        ("round-trip and keystream properties", properties),
        ("structural identities", structural_identities),
        ("3DES/DES throughput ratio", triple_des_ratio),
        ("linear scaling over 1-8 MB", linear_scaling),
        ("transcribed table reproduction", fixture_reproduction),
        ("CSV emit/parse/emit", csv_roundtrip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use cipherbench_bench::report::{
    build_table, comparison_summary, parse_results_csv, plot_series, render_plot, results_to_csv,
};
use cipherbench_bench::{resolve_seed, BenchConfig, BenchResult, Direction, WORKLOAD_GENERATOR};
use cipherbench_core::kat::{self, KatReport, KatVector};
use cipherbench_core::modes;
use cipherbench_core::{
    check_mode, schedule, validate_key, CipherId, KeyMaterial, ModeId, StreamState,
};
use rand::rngs::OsRng;
use rand::RngCore;
use serde::Serialize;

use crate::args::{BenchArgs, ReportFormat};
use crate::container::{iv_len, ContainerHeader};

/// Writes `data` to `path` through a temporary file in the same directory,
/// so a failed command never leaves a partial output behind.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(data)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn read(path: &Path, what: &str) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {what} {}", path.display()))
}

fn read_key(cipher: CipherId, path: &Path) -> Result<KeyMaterial> {
    let bytes = read(path, "key file")?;
    Ok(validate_key(cipher, &bytes)?)
}

/// Container bytes for `plaintext`, with `iv` as the IV or nonce.
pub fn seal(key: &KeyMaterial, mode: ModeId, iv: Vec<u8>, plaintext: &[u8]) -> Result<Vec<u8>> {
    let header = ContainerHeader::new(key.cipher(), mode, iv)?;
    let body = match mode {
        ModeId::Ecb => modes::ecb_encrypt(&schedule(key)?, plaintext),
        ModeId::Cbc => modes::cbc_encrypt(&schedule(key)?, &header.iv, plaintext)?,
        ModeId::Stream => apply_stream(key, &header.iv, plaintext)?,
    };
    let mut out = header.to_bytes();
    out.extend_from_slice(&body);
    Ok(out)
}

/// Plaintext of a container, checked against `key_bytes`.
pub fn open(key_bytes: &[u8], container: &[u8]) -> Result<Vec<u8>> {
    let (header, body) = ContainerHeader::parse(container)?;
    let key = validate_key(header.cipher, key_bytes)?;
    let plaintext = match header.mode {
        ModeId::Ecb => modes::ecb_decrypt(&schedule(&key)?, body),
        ModeId::Cbc => modes::cbc_decrypt(&schedule(&key)?, &header.iv, body),
        ModeId::Stream => return apply_stream(&key, &header.iv, body),
    };
    plaintext.with_context(|| {
        format!(
            "cannot decrypt {} {} ciphertext",
            header.cipher, header.mode
        )
    })
}

fn apply_stream(key: &KeyMaterial, iv: &[u8], data: &[u8]) -> Result<Vec<u8>> {
    let nonce = (!iv.is_empty()).then_some(iv);
    let mut state = StreamState::new(key, nonce)?;
    let mut out = data.to_vec();
    state.apply_keystream(&mut out);
    Ok(out)
}

pub fn cmd_encrypt(
    cipher: CipherId,
    mode: ModeId,
    key_path: &Path,
    input: &Path,
    output: &Path,
    stderr: &mut dyn Write,
) -> Result<()> {
    check_mode(cipher, mode)?;
    let key = read_key(cipher, key_path)?;
    if mode == ModeId::Ecb {
        writeln!(
            stderr,
            "warning: ECB mode encrypts identical blocks identically and leaks plaintext structure"
        )?;
    }
    let plaintext = read(input, "input")?;
    let mut iv = vec![0u8; iv_len(cipher, mode)];
    OsRng.fill_bytes(&mut iv);
    write_atomic(output, &seal(&key, mode, iv, &plaintext)?)
}

pub fn cmd_decrypt(key_path: &Path, input: &Path, output: &Path) -> Result<()> {
    let key_bytes = read(key_path, "key file")?;
    let container = read(input, "input")?;
    write_atomic(output, &open(&key_bytes, &container)?)
}

#[derive(Serialize)]
struct BenchMetadata<'a> {
    tool_version: &'a str,
    workload_generator: &'a str,
    seed: u64,
    sizes_mb: &'a [u64],
    repeats: usize,
    direction: &'a str,
    include_io: bool,
    cases: Vec<String>,
}

pub fn bench_config(args: &BenchArgs) -> Result<BenchConfig> {
    let config = BenchConfig {
        ciphers: args.ciphers.clone(),
        modes: args.modes.clone(),
        sizes_mb: args.sizes.clone(),
        repeats: args.repeats as usize,
        seed: resolve_seed(args.seed)?,
        direction: if args.decrypt {
            Direction::EncryptDecrypt
        } else {
            Direction::EncryptOnly
        },
        include_io: args.include_io,
    };
    config.validate()?;
    Ok(config)
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let config = bench_config(args)?;
    let total = config.cases().len() * config.sizes_mb.len();
    let mut done = 0;
    let results = cipherbench_bench::run_suite_with_progress(&config, |r| {
        done += 1;
        if !args.quiet {
            let _ = writeln!(
                stderr,
                "[{done}/{total}] {} {} {} MB: median {:.6} s",
                r.cipher, r.mode, r.size_mb, r.median_s
            );
        }
    })?;

    write_atomic(&args.out, results_to_csv(&results).as_bytes())?;
    let meta = BenchMetadata {
        tool_version: env!("CARGO_PKG_VERSION"),
        workload_generator: WORKLOAD_GENERATOR,
        seed: config.seed,
        sizes_mb: &config.sizes_mb,
        repeats: config.repeats,
        direction: match config.direction {
            Direction::EncryptOnly => "encrypt",
            Direction::EncryptDecrypt => "encrypt+decrypt",
        },
        include_io: config.include_io,
        cases: config
            .cases()
            .iter()
            .map(|(c, m)| format!("{}-{}", c.token(), m))
            .collect(),
    };
    let mut meta_path = args.out.clone().into_os_string();
    meta_path.push(".meta.json");
    write_atomic(Path::new(&meta_path), &serde_json::to_vec_pretty(&meta)?)?;

    stdout.write_all(markdown_report(&results)?.as_bytes())?;
    Ok(())
}

fn modes_present(results: &[BenchResult]) -> Vec<ModeId> {
    ModeId::ALL
        .into_iter()
        .filter(|&m| results.iter().any(|r| r.mode == m))
        .collect()
}

/// Timing tables for each mode present, then the throughput ranking.
pub fn markdown_report(results: &[BenchResult]) -> Result<String> {
    let mut out = String::new();
    for mode in modes_present(results) {
        out.push_str(&build_table(results, mode)?.to_markdown());
        out.push('\n');
    }
    if !results.is_empty() {
        out.push_str(&comparison_summary(results).to_markdown());
    }
    Ok(out)
}

pub fn render_report(csv_text: &str, format: ReportFormat) -> Result<String> {
    let results = parse_results_csv(csv_text)?;
    let mut out = String::new();
    match format {
        ReportFormat::Md => out = markdown_report(&results)?,
        ReportFormat::Csv => {
            for (i, mode) in modes_present(&results).into_iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let table = build_table(&results, mode)?;
                out.push_str(&format!("# {}\n{}", table.title, table.to_csv()));
            }
        }
        ReportFormat::Plot => {
            for (i, mode) in modes_present(&results).into_iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&render_plot(mode, &plot_series(&results, mode)));
            }
        }
    }
    Ok(out)
}

pub fn cmd_report(input: &Path, format: ReportFormat, stdout: &mut dyn Write) -> Result<()> {
    let bytes = read(input, "results CSV")?;
    let text =
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", input.display()))?;
    let report = render_report(&text, format).with_context(|| format!("in {}", input.display()))?;
    stdout.write_all(report.as_bytes())?;
    Ok(())
}

/// Prints one section per cipher and returns whether every vector passed.
pub fn report_vectors(report: &KatReport, stdout: &mut dyn Write) -> Result<bool> {
    for cipher in CipherId::ALL {
        let outcomes: Vec<_> = report.for_cipher(cipher).collect();
        let failed = outcomes.iter().filter(|o| !o.passed()).count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(
            stdout,
            "{:<10} {status} ({} vectors)",
            cipher.label(),
            outcomes.len()
        )?;
        for o in outcomes.iter().filter(|o| !o.passed()) {
            let actual = match &o.actual {
                Ok(bytes) => hex::encode(bytes),
                Err(e) => format!("error: {e}"),
            };
            writeln!(stdout, "  {} FAILED", o.vector.name)?;
            writeln!(
                stdout,
                "    expected {}",
                hex::encode(o.vector.expected_bytes())
            )?;
            writeln!(stdout, "    actual   {actual}")?;
        }
    }
    Ok(report.all_passed()
        && CipherId::ALL
            .iter()
            .all(|&c| report.for_cipher(c).count() >= 2))
}

pub fn cmd_vectors_with(
    eval: impl Fn(&KatVector) -> Result<Vec<u8>, String>,
    stdout: &mut dyn Write,
) -> Result<bool> {
    report_vectors(&kat::run_with(eval), stdout)
}

pub fn cmd_vectors(stdout: &mut dyn Write) -> Result<bool> {
    cmd_vectors_with(kat::evaluate, stdout)
}

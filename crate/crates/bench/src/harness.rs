//! Timed encryption runs over the cipher × mode × size grid.

use std::io::Write;
use std::time::Instant;

use cipherbench_core::modes::{self, pkcs7_pad};
use cipherbench_core::{
    check_mode, schedule, validate_key, CipherError, CipherId, Family, KeyMaterial, ModeId,
    StreamState,
};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::memory::sample_peak_memory;
use crate::stats::Summary;
use crate::workload::{generate_workload, Workload, MIB};

/// Environment variable that pins the benchmark seed when no explicit seed
/// is given.
pub const SEED_ENV: &str = "CIPHERBENCH_SEED";

pub const DEFAULT_SEED: u64 = 0x0c1b_e4c4_5eed_2024;
pub const DEFAULT_SIZES_MB: [u64; 8] = [1, 2, 4, 8, 16, 32, 64, 128];
pub const DEFAULT_REPEATS: usize = 5;

// Keys come from a separate stream of the seed so they never overlap
// workload bytes.
const KEY_STREAM: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Cipher(#[from] CipherError),
    #[error("invalid benchmark configuration: {0}")]
    Config(String),
    #[error("{cipher} has no compatible mode among those selected")]
    NoCompatibleMode { cipher: CipherId },
    #[error("invalid {SEED_ENV} value {value:?}: expected an unsigned 64-bit integer")]
    SeedEnv { value: String },
    #[error("{cipher} {mode}: decryption did not recover the workload")]
    Verification { cipher: CipherId, mode: ModeId },
    #[error("workload i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Time encryption alone.
    #[default]
    EncryptOnly,
    /// Time encryption followed by decryption, and check the round trip.
    EncryptDecrypt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub repeats: usize,
    pub direction: Direction,
    /// Read the workload back from a temporary file inside the timed region.
    pub include_io: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            repeats: DEFAULT_REPEATS,
            direction: Direction::EncryptOnly,
            include_io: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub ciphers: Vec<CipherId>,
    pub modes: Vec<ModeId>,
    pub sizes_mb: Vec<u64>,
    pub repeats: usize,
    pub seed: u64,
    pub direction: Direction,
    pub include_io: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ciphers: CipherId::ALL.to_vec(),
            modes: ModeId::ALL.to_vec(),
            sizes_mb: DEFAULT_SIZES_MB.to_vec(),
            repeats: DEFAULT_REPEATS,
            seed: DEFAULT_SEED,
            direction: Direction::EncryptOnly,
            include_io: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let config = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.ciphers.is_empty() {
            return config("no ciphers selected");
        }
        if self.modes.is_empty() {
            return config("no modes selected");
        }
        if self.repeats == 0 {
            return config("repeats must be positive");
        }
        if self.sizes_mb.is_empty() {
            return config("no sizes selected");
        }
        if self.sizes_mb[0] == 0 {
            return config("sizes must be positive");
        }
        if self.sizes_mb.windows(2).any(|w| w[0] >= w[1]) {
            return config("sizes must be strictly increasing");
        }
        for (i, c) in self.ciphers.iter().enumerate() {
            if self.ciphers[..i].contains(c) {
                return Err(BenchError::Config(format!("cipher {c} listed twice")));
            }
            if !self.modes.iter().any(|&m| check_mode(*c, m).is_ok()) {
                return Err(BenchError::NoCompatibleMode { cipher: *c });
            }
        }
        for (i, m) in self.modes.iter().enumerate() {
            if self.modes[..i].contains(m) {
                return Err(BenchError::Config(format!("mode {m} listed twice")));
            }
        }
        Ok(())
    }

    /// Compatible (cipher, mode) pairs in registry order.
    pub fn cases(&self) -> Vec<(CipherId, ModeId)> {
        let mut cases: Vec<_> = self
            .ciphers
            .iter()
            .flat_map(|&c| {
                self.modes
                    .iter()
                    .filter(move |&&m| check_mode(c, m).is_ok())
                    .map(move |&m| (c, m))
            })
            .collect();
        cases.sort();
        cases
    }

    fn run_options(&self) -> RunOptions {
        RunOptions {
            repeats: self.repeats,
            direction: self.direction,
            include_io: self.include_io,
        }
    }
}

/// Picks the seed: an explicit value wins, then [`SEED_ENV`], then
/// [`DEFAULT_SEED`].
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, BenchError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| BenchError::SeedEnv { value }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub run_index: u32,
    pub elapsed_s: f64,
    pub peak_rss_bytes: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub cipher: CipherId,
    pub mode: ModeId,
    pub size_mb: u64,
    pub samples: Vec<Sample>,
    pub median_s: f64,
    pub mean_s: f64,
    pub stddev_s: f64,
    /// `size_mb / median_s`.
    pub throughput_mb_s: f64,
}

impl BenchResult {
    /// Panics if `samples` is empty.
    pub fn from_samples(
        cipher: CipherId,
        mode: ModeId,
        size_mb: u64,
        samples: Vec<Sample>,
    ) -> Self {
        let elapsed: Vec<f64> = samples.iter().map(|s| s.elapsed_s).collect();
        let summary = Summary::of(&elapsed).expect("at least one sample");
        BenchResult {
            cipher,
            mode,
            size_mb,
            samples,
            median_s: summary.median,
            mean_s: summary.mean,
            stddev_s: summary.stddev,
            throughput_mb_s: size_mb as f64 / summary.median,
        }
    }

    pub fn size_bytes(&self) -> u64 {
        self.size_mb * MIB
    }

    pub fn peak_rss_bytes(&self) -> Option<u64> {
        self.samples.iter().filter_map(|s| s.peak_rss_bytes).max()
    }
}

enum Prepared {
    Block(Box<cipherbench_core::BlockCipherInstance>),
    Stream(KeyMaterial),
}

const ZERO_IV: [u8; 16] = [0; 16];
const ZERO_NONCE: [u8; cipherbench_core::stream::NONCE_LEN] = [0; 12];

impl Prepared {
    fn input(&self, mode: ModeId, data: &[u8]) -> Vec<u8> {
        match (self, mode) {
            (Prepared::Block(inst), ModeId::Ecb | ModeId::Cbc) => {
                pkcs7_pad(data, inst.block_size())
            }
            _ => data.to_vec(),
        }
    }

    fn stream(&self) -> Result<StreamState, CipherError> {
        let Prepared::Stream(key) = self else {
            unreachable!("stream state requested for a block cipher")
        };
        let nonce = (key.cipher() == CipherId::ChaCha20).then_some(&ZERO_NONCE[..]);
        StreamState::new(key, nonce)
    }

    fn encrypt(
        &self,
        mode: ModeId,
        buf: &mut [u8],
        stream: Option<StreamState>,
    ) -> Result<(), CipherError> {
        match self {
            Prepared::Block(inst) => match mode {
                ModeId::Ecb => modes::ecb_encrypt_blocks(inst, buf),
                _ => modes::cbc_encrypt_blocks(inst, &ZERO_IV[..inst.block_size()], buf),
            },
            Prepared::Stream(_) => {
                stream.expect("stream state prepared").apply_keystream(buf);
                Ok(())
            }
        }
    }

    fn decrypt(
        &self,
        mode: ModeId,
        buf: &mut [u8],
        stream: Option<StreamState>,
    ) -> Result<(), CipherError> {
        match self {
            Prepared::Block(inst) => match mode {
                ModeId::Ecb => modes::ecb_decrypt_blocks(inst, buf),
                _ => modes::cbc_decrypt_blocks(inst, &ZERO_IV[..inst.block_size()], buf),
            },
            Prepared::Stream(_) => self.encrypt(mode, buf, stream),
        }
    }
}

/// Benchmarks one (cipher, mode) pair on `workload`.
///
/// The key is scheduled once, outside the timer, and one untimed warm-up
/// pass runs before the `repeats` timed passes. Buffers are copied and
/// padded outside the timer too (unless `include_io` moves the read inside).
/// `size_mb` of the result is the workload size in whole MB.
pub fn run_case(
    key: &KeyMaterial,
    mode: ModeId,
    workload: &Workload,
    opts: &RunOptions,
) -> Result<BenchResult, BenchError> {
    let cipher = key.cipher();
    check_mode(cipher, mode)?;
    if opts.repeats == 0 {
        return Err(BenchError::Config("repeats must be positive".into()));
    }
    let prepared = match cipher.family() {
        Family::Block => Prepared::Block(Box::new(schedule(key)?)),
        Family::Stream => Prepared::Stream(key.clone()),
    };
    let reference = prepared.input(mode, &workload.data);

    let io_file = if opts.include_io {
        let mut file = tempfile::NamedTempFile::new()?;
        file.write_all(&workload.data)?;
        file.flush()?;
        Some(file)
    } else {
        None
    };

    let mut samples = Vec::with_capacity(opts.repeats);
    for pass in 0..=opts.repeats {
        let mut buf = reference.clone();
        let stream_enc = matches!(prepared, Prepared::Stream(_))
            .then(|| prepared.stream())
            .transpose()?;
        let stream_dec = (matches!(prepared, Prepared::Stream(_))
            && opts.direction == Direction::EncryptDecrypt)
            .then(|| prepared.stream())
            .transpose()?;

        let start = Instant::now();
        if let Some(file) = &io_file {
            let data = std::fs::read(file.path())?;
            buf = prepared.input(mode, &data);
        }
        prepared.encrypt(mode, &mut buf, stream_enc)?;
        if opts.direction == Direction::EncryptDecrypt {
            prepared.decrypt(mode, &mut buf, stream_dec)?;
        }
        let elapsed = start.elapsed().as_secs_f64();
        std::hint::black_box(&buf);

        if opts.direction == Direction::EncryptDecrypt && pass == 1 && buf != reference {
            return Err(BenchError::Verification { cipher, mode });
        }
        // Pass 0 is the warm-up.
        if pass > 0 {
            samples.push(Sample {
                run_index: (pass - 1) as u32,
                elapsed_s: elapsed.max(f64::MIN_POSITIVE),
                peak_rss_bytes: sample_peak_memory(),
            });
        }
    }
    Ok(BenchResult::from_samples(
        cipher,
        mode,
        workload.size_bytes / MIB,
        samples,
    ))
}

/// Runs every compatible (cipher, mode, size) case sequentially and returns
/// the results sorted by (cipher, mode, size).
pub fn run_suite(config: &BenchConfig) -> Result<Vec<BenchResult>, BenchError> {
    run_suite_with_progress(config, |_| {})
}

/// Like [`run_suite`], calling `progress` after each finished case.
pub fn run_suite_with_progress(
    config: &BenchConfig,
    mut progress: impl FnMut(&BenchResult),
) -> Result<Vec<BenchResult>, BenchError> {
    config.validate()?;
    let cases = config.cases();
    let opts = config.run_options();
    let mut key_rng = ChaCha8Rng::seed_from_u64(config.seed);
    key_rng.set_stream(KEY_STREAM);
    let keys = cases
        .iter()
        .map(|&(cipher, _)| {
            let mut bytes = vec![0u8; cipher.key_len()];
            key_rng.fill_bytes(&mut bytes);
            validate_key(cipher, &bytes)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut results = Vec::with_capacity(cases.len() * config.sizes_mb.len());
    // One workload per size, shared by every cipher.
    for &size_mb in &config.sizes_mb {
        let workload = generate_workload(size_mb * MIB, config.seed);
        for (&(_, mode), key) in cases.iter().zip(&keys) {
            let result = run_case(key, mode, &workload, &opts)?;
            progress(&result);
            results.push(result);
        }
    }
    results.sort_by_key(|r| (r.cipher, r.mode, r.size_mb));
    Ok(results)
}

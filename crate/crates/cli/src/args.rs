use std::path::PathBuf;

use cipherbench_core::{CipherId, ModeId};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cipherbench",
    version,
    about = "Symmetric cipher suite and benchmark harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt a file into a CBE1 container.
    Encrypt {
        #[arg(long)]
        cipher: CipherId,
        /// ecb or cbc for block ciphers, stream for RC4 and ChaCha20.
        #[arg(long)]
        mode: ModeId,
        /// File holding exactly the cipher's key bytes (raw, not hex).
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a CBE1 container; cipher and mode come from its header.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time encryption across ciphers, modes and sizes.
    Bench(BenchArgs),
    /// Render tables, CSV or plot series from a results CSV.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
        format: ReportFormat,
    },
    /// Check every cipher against the embedded known-answer vectors.
    Vectors,
}

#[derive(Debug, Clone, clap::Args)]
pub struct BenchArgs {
    /// Comma-separated cipher names.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "aes,des,3des,blowfish,twofish,rc2,rc4,chacha20"
    )]
    pub ciphers: Vec<CipherId>,
    /// Comma-separated modes; each cipher runs in the ones it supports.
    #[arg(long, value_delimiter = ',', default_value = "ecb,cbc,stream")]
    pub modes: Vec<ModeId>,
    /// Comma-separated workload sizes in MB (1 MB = 2^20 bytes), increasing.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64,128",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub sizes: Vec<u64>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
    /// Workload and key seed; defaults to $CIPHERBENCH_SEED, then a fixed value.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Results CSV path. Run metadata goes to `<out>.meta.json`.
    #[arg(long)]
    pub out: PathBuf,
    /// Read the workload from disk inside the timed region.
    #[arg(long)]
    pub include_io: bool,
    /// Time decryption as well and check that it recovers the input.
    #[arg(long)]
    pub decrypt: bool,
    /// Suppress per-case progress on standard error.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Md,
    Csv,
    Plot,
}

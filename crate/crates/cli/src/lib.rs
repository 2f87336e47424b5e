//! The `cipherbench` command line: file encryption in a small container
//! format, benchmark runs, report rendering and known-answer checks.

pub mod args;
pub mod commands;
pub mod container;

use std::io::Write;
use std::process::ExitCode;

pub use args::{BenchArgs, Cli, Command, ReportFormat};
pub use container::{ContainerError, ContainerHeader};

/// Runs one parsed command. `Ok(false)` means the command ran but reported
/// a failure (a known-answer mismatch).
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Encrypt {
            cipher,
            mode,
            key,
            input,
            out,
        } => commands::cmd_encrypt(*cipher, *mode, key, input, out, stderr)?,
        Command::Decrypt { key, input, out } => commands::cmd_decrypt(key, input, out)?,
        Command::Bench(args) => commands::cmd_bench(args, stdout, stderr)?,
        Command::Report { input, format } => commands::cmd_report(input, *format, stdout)?,
        Command::Vectors => return commands::cmd_vectors(stdout),
    }
    Ok(true)
}

/// Exit status for a finished [`run`]; errors are printed as one chain of
/// messages, without a backtrace.
pub fn exit_code(outcome: anyhow::Result<bool>, stderr: &mut dyn Write) -> ExitCode {
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

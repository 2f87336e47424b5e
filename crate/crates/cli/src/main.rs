use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

fn main() -> ExitCode {
    let cli = match cipherbench::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let message = e.render().to_string();
            let mut stderr = std::io::stderr();
            let _ = write!(stderr, "{message}");
            if !message.contains("Usage:") {
                let _ = writeln!(stderr, "\n{}", cipherbench::Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr();
    let outcome = cipherbench::run(&cli, &mut stdout, &mut stderr);
    cipherbench::exit_code(outcome, &mut stderr)
}

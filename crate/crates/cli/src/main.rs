use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polariton_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.resolve().and_then(|cfg| polariton_cli::run(&cfg));
    match result {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(3);
            }
            for path in &outcome.written {
                eprintln!("wrote {}", path.display());
            }
            if outcome.exit_code != 0 {
                eprintln!("verification did not pass");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            if let Some(report) = err.report() {
                if let Ok(text) = serde_json::to_string_pretty(report) {
                    eprintln!("{text}");
                }
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

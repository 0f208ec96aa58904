use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dpx_cli::{run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = match run(&cli, &mut lock) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    };
    let _ = lock.flush();
    ExitCode::from(code)
}

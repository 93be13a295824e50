use std::process::ExitCode;

use clap::Parser;
use mixup_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match mixup_cli::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

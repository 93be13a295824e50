//! The `mixup` command-line tool. [`run`] executes one parsed invocation and
//! returns its exit code; input errors are returned as messages and map to
//! exit code 2.

pub mod args;
mod commands;
pub mod report;

use args::{Cli, Command};

/// Exit code 0 on success, 1 when `verify` finds a mismatch.
pub fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Mixup(a) => commands::mixup(a),
        Command::Pairwise(a) => commands::pairwise(a),
        Command::Profile(a) => commands::profile(a),
        Command::Subsample(a) => commands::subsample(a),
        Command::Verify(a) => commands::verify(a),
        Command::Plot(a) => commands::plot(a),
    }
}

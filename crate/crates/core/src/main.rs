use std::process::ExitCode;

use clap::Parser;
use germlab::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.common.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("germlab: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

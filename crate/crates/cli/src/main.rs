use std::process::ExitCode;

use clap::Parser;

use sturmian_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification { output, .. } = &e {
                print!("{output}");
            }
            eprintln!("{}", e.report(cli.format));
            ExitCode::from(if matches!(e, CliError::Verification { .. }) {
                1
            } else {
                2
            })
        }
    }
}

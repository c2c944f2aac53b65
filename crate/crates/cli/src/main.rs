use std::process::ExitCode;

use clap::Parser;

use simplexharm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simplexharm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

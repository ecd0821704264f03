use std::process::exit;

use clap::Parser;

use cantorval::cli::{self, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    match RunConfig::from_env().and_then(|cfg| cli::run(&cli, &cfg)) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if !outcome.checks_passed {
                exit(cli::EXIT_CHECK_FAILED);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(cli::exit_code(&e));
        }
    }
}

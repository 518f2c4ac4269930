use clap::Parser;
use pfs_cli::args::{Cli, Command};
use pfs_cli::commands::{compare, compute, verify};
use pfs_cli::config::{default_seed, RunConfig};
use pfs_cli::{error_json, exit_code};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; keep the dedicated usage exit code
            let _ = e.print();
            std::process::exit(64);
        }
    };
    let outcome = match &cli.command {
        Command::Compute(a) => RunConfig::from_args(a).and_then(|cfg| compute::run(&cfg).map(|()| true)),
        Command::Verify(a) => {
            let seed = a.seed.unwrap_or_else(default_seed);
            verify::run(&a.suite, a.include_a5, seed)
        }
        Command::Compare(a) => compare::run(a),
    };
    match outcome {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("{}", error_json(&e));
            std::process::exit(exit_code(&e));
        }
    }
}

use std::process::ExitCode;

use clap::Parser;
use pade_tilings_cli::{execute, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match execute(&cli, argv) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values always serialize"));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;
use mmfd_core::Error;

use crate::args::Args;

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;
const EXIT_IO: u8 = 4;

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match args.scenario() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("mmfd: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run::run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mmfd: {e}");
            let code = match e {
                Error::Io(_) | Error::Serialize(_) => EXIT_IO,
                Error::Config { .. } | Error::ConfigParse(_) => EXIT_CONFIG,
                _ => EXIT_RUNTIME,
            };
            ExitCode::from(code)
        }
    }
}

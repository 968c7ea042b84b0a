use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use conevanish_cli::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = conevanish_verify::threads::with_env_threads(|| run(&cli));
    eprint!("{}", out.stderr);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    }
    ExitCode::from(out.code as u8)
}

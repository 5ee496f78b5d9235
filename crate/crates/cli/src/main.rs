use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kndeg::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    for f in &out.findings {
        eprintln!("finding: {}: engine {}; printed {}", f.location, f.engine, f.printed);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.body),
        None => std::io::stdout().lock().write_all(out.body.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write report: {err}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.status.exit_code() as u8)
}

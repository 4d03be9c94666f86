use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use probinterf::cli::{self, exit, Cli};

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::PARSE as u8 } else { 0 });
        }
    };
    let report = match cli::run(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let written = match &args.out {
        Some(path) => {
            std::fs::write(path, &report.text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .lock()
            .write_all(report.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(exit::IO as u8);
    }
    ExitCode::from(report.code as u8)
}

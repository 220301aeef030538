use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use aecolor_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // A closed pipe on stdout is not an error worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sejoin_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes());
            for d in &out.diagnostics {
                eprintln!("sejoin: {d}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("sejoin: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

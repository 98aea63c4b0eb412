use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use prodcurves::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(o) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(o.stdout.as_bytes());
            for w in &o.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

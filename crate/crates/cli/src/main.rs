use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cli::{run, CliError, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(&config).and_then(|r| {
        match &config.out {
            Some(path) => fs::write(path, &r.body)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(r.body.as_bytes())?;
                if !r.body.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
            }
        }
        Ok::<_, CliError>(r.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("amen: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let mut out = std::io::stdout().lock();
    // Write errors are ignored; the exit code carries the verdict.
    match run::run(cli) {
        Ok(report) => {
            match format {
                Format::Json => {
                    let doc = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                    let _ = writeln!(out, "{doc}");
                    eprintln!("{}", report.text);
                }
                Format::Text => {
                    let _ = writeln!(out, "{}", report.text);
                }
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            if format == Format::Json {
                let _ = writeln!(out, "{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

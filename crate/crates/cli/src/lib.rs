//! Command-line front end for `fibered-core`.

pub mod commands;
pub mod demos;
pub mod parse;
pub mod report;

use clap::error::ErrorKind;
use clap::Parser;
use commands::{command_name, dispatch, Cli};
use report::{Report, SCHEMA_VERSION};
use std::io::Write;
use std::time::Instant;

/// Run with `argv` (including the program name), writing to stdout and
/// stderr. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if help {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            if args.iter().any(|a| a == "--json") {
                let r = Report {
                    schema: SCHEMA_VERSION,
                    command: String::new(),
                    inputs: Default::default(),
                    verdict: "InvalidInput".into(),
                    exit_code: 2,
                    certificates: report::fields([("error", e.kind().to_string().into())]),
                    seed: 0,
                    timing_ms: None,
                };
                let _ = writeln!(out, "{}", r.to_json());
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli);
    let timing_ms = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let r = match result {
        Ok((command, o)) => Report {
            schema: SCHEMA_VERSION,
            command,
            inputs: o.inputs,
            verdict: o.verdict,
            exit_code: o.exit_code,
            certificates: o.certificates,
            seed: cli.seed,
            timing_ms,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Report {
                schema: SCHEMA_VERSION,
                command: command_name(&cli),
                inputs: Default::default(),
                verdict: e.verdict().into(),
                exit_code: e.exit_code(),
                certificates: report::fields([("error", e.to_string().into())]),
                seed: cli.seed,
                timing_ms,
            }
        }
    };
    let text = if cli.json { r.to_json() + "\n" } else { r.to_text() };
    let _ = out.write_all(text.as_bytes());
    r.exit_code
}

//! Command-line front end: argument parsing, dispatch, and a single JSON
//! document per invocation.
//!
//! Exit codes: 0 on success, 1 on a domain error (the document carries an
//! `error` object with a machine-readable `code`), 2 on a usage error.

mod args;
mod commands;
mod error;
mod pipeline;

use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

pub use args::Cli;
pub use error::CliError;

use args::Command;
use commands::Context;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let start = Instant::now();
    let mut ctx = Context {
        seed: cli.seed,
        ..Context::default()
    };
    let (body, code) = match dispatch(&mut ctx, &cli.command) {
        Ok(Dispatched::Done(result)) => (json!({"result": result}), EXIT_OK),
        Ok(Dispatched::Partial { results, step, error }) => {
            let mut e = error.to_json();
            e["step"] = json!(step);
            (json!({"results": results, "error": e}), EXIT_DOMAIN)
        }
        Err(e) => (json!({"error": e.to_json()}), EXIT_DOMAIN),
    };

    let mut doc = json!({"manifest": manifest(&argv, &ctx)});
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let _ = writeln!(out, "{}", render(&doc, cli.json_indent));
    if !cli.quiet {
        for w in &ctx.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        let _ = writeln!(err, "wall time: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    code
}

enum Dispatched {
    Done(Value),
    Partial {
        results: Vec<Value>,
        step: usize,
        error: CliError,
    },
}

fn dispatch(ctx: &mut Context, command: &Command) -> Result<Dispatched, CliError> {
    let value = match command {
        Command::Parse(a) => commands::parse_cmd(ctx, a)?,
        Command::Newton(a) => commands::newton_cmd(ctx, a)?,
        Command::Degree(a) => commands::degree_cmd(ctx, a)?,
        Command::Seifert(c) => commands::seifert_cmd(ctx, c)?,
        Command::Zeta(c) => commands::zeta_cmd(ctx, c)?,
        Command::Enhanced(c) => commands::enhanced_cmd(ctx, c)?,
        Command::Pipeline { script } => {
            let script = ctx.read_json(script)?;
            let outcome = pipeline::run_script(ctx, &script)?;
            return Ok(match outcome.failure {
                None => Dispatched::Done(Value::Array(outcome.results)),
                Some((step, error)) => Dispatched::Partial {
                    results: outcome.results,
                    step,
                    error,
                },
            });
        }
    };
    Ok(Dispatched::Done(value))
}

/// Everything needed to reproduce the run. Wall time is reported on
/// standard error so that identical inputs give identical documents.
fn manifest(argv: &[String], ctx: &Context) -> Value {
    json!({
        "command": argv.iter().skip(1).collect::<Vec<_>>(),
        "seed": ctx.seed,
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": ctx.inputs.iter().map(|(path, sha)| json!({"path": path, "sha256": sha})).collect::<Vec<_>>(),
    })
}

fn render(doc: &Value, indent: usize) -> String {
    if indent == 0 {
        return doc.to_string();
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    doc.serialize(&mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

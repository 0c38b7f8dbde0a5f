//! Batch mode: newline-delimited JSON requests on standard input, one JSON
//! response per line on standard output.
//!
//! Request schema: `{"cmd": "gw eq", "args": {"x": "...", "y": "...",
//! "field": "Q"}}`. Expression arguments are looked up under the value
//! names shown in `--help`; boolean `true` becomes a bare long flag and
//! every other scalar becomes a long flag with a value. Responses are
//! `{"status": "ok"|"error", "result": ..., "diagnostics": [...]}`.
//! Request problems are reported in-band and do not stop the run, so the
//! process exits 0 whenever standard input could be read to the end.

use std::io::{self, BufRead};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use crate::{dispatch, Cli};

/// Value names of positional arguments per command, in declaration order.
const POSITIONALS: &[(&str, &[&str])] = &[
    ("gw eq", &["x", "y"]),
    ("gw add", &["x", "y"]),
    ("gw mul", &["x", "y"]),
    ("gw invariants", &["x"]),
    ("power an", &["q"]),
    ("k0 chi", &["x"]),
    ("k0 sym", &["x"]),
    ("k0 mul", &["x", "y"]),
    ("zeta geom", &["q"]),
    ("zeta kapranov", &["x"]),
];

fn positionals_for(cmd: &str) -> &'static [&'static str] {
    POSITIONALS
        .iter()
        .find(|(c, _)| *c == cmd)
        .map(|(_, names)| *names)
        .unwrap_or(&[])
}

fn scalar_to_string(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Builds the argv vector for one request.
fn request_argv(cmd: &str, args: &Map<String, Value>) -> Result<Vec<String>, String> {
    let cmd_key = cmd.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut argv = vec!["gwchi".to_string(), "--json".to_string()];
    if let Some(field) = args.get("field") {
        let field =
            scalar_to_string(field).ok_or_else(|| "field must be a string".to_string())?;
        argv.push("--field".into());
        argv.push(field);
    }
    for word in cmd_key.split(' ') {
        argv.push(word.to_string());
    }
    let positionals = positionals_for(&cmd_key);
    for name in positionals {
        if let Some(v) = args.get(*name) {
            argv.push(
                scalar_to_string(v)
                    .ok_or_else(|| format!("argument {name:?} must be a scalar"))?,
            );
        }
    }
    // serde_json maps iterate in sorted key order, so flag order is stable
    for (key, v) in args {
        if key == "field" || positionals.contains(&key.as_str()) {
            continue;
        }
        match v {
            Value::Bool(true) => argv.push(format!("--{key}")),
            Value::Bool(false) => {}
            _ => {
                let rendered = scalar_to_string(v)
                    .ok_or_else(|| format!("argument {key:?} must be a scalar"))?;
                argv.push(format!("--{key}"));
                argv.push(rendered);
            }
        }
    }
    Ok(argv)
}

fn error_response(diagnostics: Vec<String>) -> Value {
    json!({ "status": "error", "result": Value::Null, "diagnostics": diagnostics })
}

fn respond(line: &str) -> Value {
    let request: Value = match serde_json::from_str(line) {
        Ok(v) => v,
        Err(e) => return error_response(vec![format!("request is not valid JSON: {e}")]),
    };
    let Some(cmd) = request.get("cmd").and_then(Value::as_str) else {
        return error_response(vec!["request must have a string field \"cmd\"".into()]);
    };
    let empty = Map::new();
    let args = match request.get("args") {
        None => &empty,
        Some(Value::Object(map)) => map,
        Some(_) => return error_response(vec!["\"args\" must be an object".into()]),
    };
    let argv = match request_argv(cmd, args) {
        Ok(argv) => argv,
        Err(e) => return error_response(vec![e]),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return error_response(vec![format!(
                "unknown or malformed command {cmd:?}: {}",
                e.kind()
            )])
        }
    };
    match dispatch(&cli) {
        Ok(out) => json!({
            "status": "ok",
            "result": out.value,
            "diagnostics": out.diagnostics,
        }),
        Err(e) => error_response(vec![format!("error[{}]: {e}", e.kind())]),
    }
}

pub fn run() -> ExitCode {
    let stdin = io::stdin();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(line) => line,
            Err(e) => {
                eprintln!("error reading standard input: {e}");
                return ExitCode::from(1);
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        println!("{}", respond(&line));
    }
    ExitCode::from(0)
}

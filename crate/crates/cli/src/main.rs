mod args;
mod report;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use devlat::Error;

use args::Cli;
use run::Body;

fn schemas() -> serde_json::Value {
    let to_map = |v: Vec<(&str, schemars::schema::RootSchema)>| -> serde_json::Map<String, serde_json::Value> {
        v.into_iter().map(|(k, s)| (k.to_string(), serde_json::to_value(s).expect("schemas serialize"))).collect()
    };
    serde_json::json!({
        "inputs": to_map(devlat::io::input_schemas()),
        "reports": to_map(report::report_schemas()),
    })
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.schema {
        Ok((pretty(&schemas()), true))
    } else if let Some(cmd) = &cli.command {
        run::run(&cli, cmd).map(|r| {
            let text = match r.body {
                Body::Json(v) => pretty(&v),
                Body::Text(t) => t,
            };
            (text, r.holds)
        })
    } else {
        let _ = Cli::command().print_help();
        return ExitCode::from(2);
    };
    match result {
        Ok((text, holds)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: writing the report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::ResourceLimit { .. }) { 3 } else { 2 })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

//! `lll`: command-line front end for lll-core.
//!
//! Every report is JSON of the form
//! `{"tool", "version", "command", "seed", "config", "result"}`; feeding it to
//! `lll replay` re-executes `config` and reproduces the report byte for byte.
//!
//! Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 step limit
//! reached under `--strict`.

mod config;
mod exec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use config::Cmd;
use exec::{execute, ExecError};

#[derive(Debug, Parser)]
#[command(name = "lll", version, about = "Lovász Local Lemma workbench")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a CSV series (resample histogram, defect vs N) here.
    #[arg(long, global = true)]
    plot: Option<PathBuf>,
    /// Exit with status 3 if a solver hits its step limit.
    #[arg(long, global = true)]
    strict: bool,
    /// Progress notes on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    top: Top,
}

#[derive(Debug, Subcommand)]
enum Top {
    #[command(flatten)]
    Run(Cmd),
    /// Re-execute the config embedded in a report.
    Replay {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Report {
    tool: String,
    version: String,
    command: String,
    seed: Option<u64>,
    config: Cmd,
    result: serde_json::Value,
}

fn command_name(cmd: &Cmd) -> String {
    let v = serde_json::to_value(cmd).expect("config serializes");
    let mut name = Vec::new();
    let mut cur = &v;
    // externally tagged: {"witness": {"bound": {...}}}
    while let Some(obj) = cur.as_object() {
        if obj.len() != 1 {
            break;
        }
        let (k, inner) = obj.iter().next().unwrap();
        name.push(k.clone());
        cur = inner;
    }
    name.join(" ")
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("lll: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = match cli.top {
        Top::Run(cmd) => cmd,
        Top::Replay { report } => {
            let text = match std::fs::read_to_string(&report) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("{}: {e}", report.display())),
            };
            match serde_json::from_str::<Report>(&text) {
                Ok(r) => r.config,
                Err(e) => return fail(2, format!("{}:{}:{}: {e}", report.display(), e.line(), e.column())),
            }
        }
    };
    let name = command_name(&cmd);
    if cli.verbose {
        eprintln!("lll: running {name}");
    }
    let outcome = match execute(&cmd) {
        Ok(o) => o,
        Err(ExecError::Input(m)) => return fail(2, format!("invalid input: {m}")),
        Err(e @ ExecError::Failed(_)) => return fail(1, e),
    };
    let report = Report {
        tool: "lll".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name,
        seed: outcome.seed,
        config: cmd,
        result: outcome.result,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                return fail(1, format!("{}: {e}", p.display()));
            }
        }
        None => print!("{text}"),
    }
    if let (Some(p), Some(csv)) = (&cli.plot, &outcome.plot) {
        if let Err(e) = std::fs::write(p, csv) {
            return fail(1, format!("{}: {e}", p.display()));
        }
    }
    if cli.verbose && outcome.step_limit_hit {
        eprintln!("lll: step limit reached");
    }
    if cli.strict && outcome.step_limit_hit {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

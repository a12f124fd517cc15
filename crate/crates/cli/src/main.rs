//! Command-line front end: `globular <verb> ...`.

mod args;
mod commands;
mod error;
mod inputs;

use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{dim_or_default, DivideArgs, Output};
use error::CliResult;

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Check { tower, samples } => commands::check(tower, *samples, cli.seed),
        Command::Stdlib { out } => commands::stdlib_cmd(dim_or_default(cli.dim), out.as_deref()),
        Command::Normalize { tower, term, source, target } => commands::normalize_cmd(tower, term, source.as_deref(), target.as_deref()),
        Command::Admissible { tower, src, tgt, n, target } => commands::admissible(tower, src, tgt, *n, target.as_deref()),
        Command::ModelCheck { tower, model } => commands::model_check(tower, model),
        Command::Pi { tower, model, n, base } => commands::pi(tower, model, *n, *base),
        Command::Weq { tower, morphism } => commands::weq(tower, morphism),
        Command::Fundamental { groupoid } => commands::fundamental(groupoid, dim_or_default(cli.dim)),
        Command::GpdPi { groupoid, x, n } => commands::gpd_pi(groupoid, *x, *n),
        Command::Divide { tower, model, n, i, gamma, u, v, side } => {
            let d = DivideArgs { n: *n, i: *i, gamma: *gamma, u: *u, v: *v, side: *side };
            commands::divide_cmd(tower, model, &d)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n",
            };
            // A closed pipe downstream is not a failure of the command.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => eprintln!("{}", serde_json::json!({ "error": e.to_string(), "exit": e.exit_code() })),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

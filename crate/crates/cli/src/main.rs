//! `cayley`: periodicity checks, caustic solving, billiard simulation and
//! parameter sweeps for billiards inside ellipsoids.

mod commands;
mod config;
mod export;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use commands::Outcome;
use config::{Cli, Command};

fn run(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::CheckCayley(a) => commands::check_cayley(a),
        Command::SolveCaustics(a) => commands::solve_caustics(a),
        Command::Simulate(a) => commands::simulate_cmd(a),
        Command::RotationNumber(a) => commands::rotation_cmd(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    result.unwrap_or_else(|o| o)
}

fn load(cli: Cli) -> Result<Command, Outcome> {
    match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(Outcome::usage("--config cannot be combined with a subcommand")),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
        }
        (None, Some(cmd)) => Ok(cmd),
        (None, None) => Err(Outcome::usage(Cli::command().render_usage())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = load(cli).map(|cmd| run(&cmd)).unwrap_or_else(|o| o);
    if outcome.code == 2 {
        eprint!("{}", outcome.report);
    } else {
        let _ = std::io::stdout().write_all(outcome.report.as_bytes());
    }
    ExitCode::from(outcome.code)
}

//! `dv`: command-line front-end for the Distinct Vectors toolkit.
//!
//! Exit status: 0 for yes or success, 1 for a definite no, 2 for any error
//! (with a one-line diagnostic on standard error).

mod args;
mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Kind};
use output::{millis, usage, CliError, Document, Report, Timings};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Classify(_) => "classify",
        Command::Reduce(_) => "reduce",
        Command::Kernel(_) => "kernel",
        Command::Approx => "approx",
        Command::Generate(_) => "generate",
        Command::Verify(_) => "verify",
    }
}

fn run(cli: &Cli) -> Result<(Report, Vec<String>, Option<String>, Timings), CliError> {
    let start = Instant::now();
    let generate = match &cli.command {
        Command::Generate(g) => Some(g),
        _ => None,
    };
    if cli.seed.is_some() && generate.is_none() {
        return Err(usage("--seed applies to generate only"));
    }
    let graph_input = generate.is_some_and(|g| g.kind == Kind::D3is);
    let loaded = commands::load(cli.input.as_deref(), graph_input)?;
    let load_done = Instant::now();
    let input = loaded.input;
    let (report, notes) = match &cli.command {
        Command::Solve(a) => (commands::solve(input, a)?, Vec::new()),
        Command::Classify(a) => (commands::classify_cmd(input, a)?, Vec::new()),
        Command::Reduce(a) => commands::reduce(input, a)?,
        Command::Kernel(a) => commands::kernel(input, a)?,
        Command::Approx => commands::approx(input)?,
        Command::Generate(a) => (commands::generate(input, a, cli.seed.unwrap_or(0))?, Vec::new()),
        Command::Verify(a) => (commands::verify(input, a)?, Vec::new()),
    };
    let end = Instant::now();
    let timings = Timings {
        load_ms: millis(load_done - start),
        run_ms: millis(end - load_done),
        total_ms: millis(end - start),
    };
    Ok((report, notes, loaded.digest, timings))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, notes, digest, timings)) => {
            for n in &notes {
                eprintln!("{n}");
            }
            if cli.json {
                let doc = Document {
                    command: command_name(&cli.command),
                    input_digest: digest.as_deref(),
                    result: report.result,
                    solution: report.solution.as_ref().map(|s| s.columns()),
                    profile: report.profile,
                    regime: report.regime.as_ref(),
                    details: &report.details,
                    timings,
                };
                println!("{}", serde_json::to_string(&doc).expect("serializable"));
            } else if !report.text.is_empty() {
                println!("{}", report.text);
            }
            ExitCode::from(report.verdict.code())
        }
        Err(e) => {
            eprintln!("dv {}: {e}", command_name(&cli.command));
            ExitCode::from(2)
        }
    }
}

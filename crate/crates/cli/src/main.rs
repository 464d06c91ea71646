mod args;
mod commands;
mod report;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use potts_mc::McError;

use args::{Cli, Command};
use report::Report;

const EXIT_CONFIG: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_STATISTICS: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(McError::InsufficientStatistics(_)) = err.downcast_ref::<McError>() {
        return EXIT_STATISTICS;
    }
    if err.downcast_ref::<McError>().is_some()
        || err.downcast_ref::<potts_core::error::Error>().is_some()
        || err.downcast_ref::<commands::ConfigError>().is_some()
    {
        return EXIT_CONFIG;
    }
    1
}

fn run(cli: &Cli) -> anyhow::Result<(Report, bool)> {
    let report = match &cli.command {
        Command::Table1 => commands::table1_report()?,
        Command::Table2 => commands::table2_report()?,
        Command::Dozz(a) => commands::dozz(a)?,
        Command::Constant(m) => commands::constant(m)?,
        Command::Moments(a) => commands::moments(a)?,
        Command::Lambda0(m) => commands::lambda0_report(m)?,
        Command::Logs(m) => commands::logs(m)?,
        Command::Ckappa(m) => commands::ckappa(m)?,
        Command::Simulate(a) => commands::simulate(a)?,
        Command::Verify => {
            let checks = verify::run_checks()?;
            let ok = checks.iter().all(|c| c.passed());
            return Ok((verify::report(&checks), ok));
        }
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, ok) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

use std::process::ExitCode;

use clap::Parser;
use mukai_cli::{run, Cli, CliError, RunConfig};

fn execute() -> Result<i32, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return Ok(code);
        }
    };
    let config = RunConfig::from_cli(cli)?;
    let report = run(&config)?;
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    if let Some(path) = &config.out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    if config.json {
        println!("{text}");
    } else {
        println!("{}", report.summary());
    }
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    match execute() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lowwalsh_cli::args::Cli;
use lowwalsh_cli::{run, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lowwalsh: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let out = run(cli)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &out.body)?,
        None => std::io::stdout().lock().write_all(&out.body)?,
    }
    Ok(out.passed)
}

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use commands::{execute, CliError};
use config::{parse_args, Format, RunConfig};

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PTCHAIN_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("PTCHAIN_THREADS must be a non-negative integer, got `{raw}`")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    Ok(())
}

fn run(config: &RunConfig) -> Result<bool, CliError> {
    let start = Instant::now();
    let outcome = execute(config)?;
    let elapsed = start.elapsed().as_secs_f64();
    let bytes = match config.format {
        Format::Csv => outcome.csv.clone(),
        Format::Json => output::json_document(config, &outcome, config.timing.then_some(elapsed)),
    };
    match &config.output {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write output: {e}")))?;
        }
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if config.timing {
        eprintln!("wall time: {elapsed:.3} s");
    }
    Ok(!outcome.failed)
}

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) if e.help => {
            print!("{}", e.message);
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", e.message);
            return ExitCode::from(3);
        }
    };
    let result = configure_threads().and_then(|_| run(&config));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

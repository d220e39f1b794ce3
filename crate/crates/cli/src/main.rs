use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use tannakit_cli::report::RunReport;
use tannakit_cli::{run, Cli};

fn main() -> ExitCode {
    let start = Instant::now();
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut report = if outcome.pinned {
        RunReport::against_expectations(command, outcome.checks)
    } else {
        RunReport::new(command, outcome.checks)
    };
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        match outcome.text {
            Some(t) => println!("{t}"),
            None => print!("{}", report.to_text()),
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

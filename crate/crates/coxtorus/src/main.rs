use std::process::ExitCode;

use clap::Parser;
use coxtorus::{emit, run, Cli, JobSpec};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = JobSpec::from_command(&cli.command).and_then(|(spec, out)| {
        let a = run(&spec)?;
        emit(&a, out.as_deref())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{:#}", e);
            eprintln!("error: {}", msg.lines().next().unwrap_or(""));
            ExitCode::from(2)
        }
    }
}

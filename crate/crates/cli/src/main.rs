use std::process::ExitCode;

use bandharvest_cli::{parse, run, thread_count, Parsed, THREADS_ENV};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = parse(argv).and_then(|parsed| match parsed {
        Parsed::Display(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(cli) => {
            let threads = thread_count(std::env::var(THREADS_ENV).ok().as_deref())?;
            run(&cli, threads)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code)
        }
    }
}

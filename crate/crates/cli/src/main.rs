use std::process::ExitCode;

use clap::error::ErrorKind;
use kummerlab_cli::{configure_threads, execute, parse, usage_hint, CliError};

fn main() -> ExitCode {
    let cmd = match parse(std::env::args_os().skip(1)) {
        Ok(cmd) => cmd,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) => {
            let _ = e.print();
            return ExitCode::from(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 });
        }
        Err(e) => return fail(&CliError::Usage(usage_hint(&e))),
    };
    let outcome = configure_threads(&cmd).and_then(|()| execute(&cmd));
    match outcome {
        Ok(rendering) => {
            println!("{}", rendering.render(cmd.format));
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    match e {
        CliError::Usage(msg) => eprintln!("kummerlab: usage: {msg}"),
        CliError::Domain(msg) => eprintln!("kummerlab: error: {msg}"),
    }
    ExitCode::from(e.exit_code() as u8)
}

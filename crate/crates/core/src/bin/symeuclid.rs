use std::io::Write;
use std::process::ExitCode;

use symeuclid::cli;
use symeuclid::SweepLimit;

fn main() -> ExitCode {
    let outcome = cli::run(std::env::args_os(), SweepLimit::from_env());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}

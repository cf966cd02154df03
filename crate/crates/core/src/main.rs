use std::process::ExitCode;

fn main() -> ExitCode {
    stargraph::cli::run(std::env::args_os())
}

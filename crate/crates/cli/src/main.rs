use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(logsym_cli::run(std::env::args_os()))
}

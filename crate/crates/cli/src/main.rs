use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fadof_cli::run(std::env::args_os()) as u8)
}

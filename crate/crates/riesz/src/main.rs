use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(riesz::cli::run(std::env::args_os()))
}

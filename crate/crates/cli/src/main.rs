use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wedgewave_cli::run(std::env::args_os()))
}

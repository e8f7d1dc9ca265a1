use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(biharm::cli::main_with(std::env::args_os()))
}

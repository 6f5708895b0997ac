use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(krawx::main_with_args(std::env::args_os()))
}

use std::process::ExitCode;

fn main() -> ExitCode {
    compdiv::cli::main_with_args(std::env::args_os())
}

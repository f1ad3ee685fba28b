use std::process::ExitCode;

fn main() -> ExitCode {
    hypmetric::cli::main_with_args(std::env::args_os())
}

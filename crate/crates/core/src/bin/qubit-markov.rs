use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qubit_markov::cli::main_with_args(std::env::args_os()))
}

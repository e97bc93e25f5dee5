fn main() -> std::process::ExitCode {
    tordeg_cli::main_with(std::env::args_os())
}

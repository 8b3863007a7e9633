fn main() {
    std::process::exit(domran::cli::main_with_args(std::env::args_os()));
}

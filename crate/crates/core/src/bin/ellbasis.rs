fn main() {
    std::process::exit(ellbasis::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(absent_minded::cli::main_with_args(std::env::args_os()));
}

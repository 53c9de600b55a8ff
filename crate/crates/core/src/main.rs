fn main() {
    std::process::exit(starsemi::cli::main_with_args(std::env::args_os()));
}

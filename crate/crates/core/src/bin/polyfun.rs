fn main() {
    std::process::exit(polyfun::cli::main_with_args(std::env::args_os()));
}

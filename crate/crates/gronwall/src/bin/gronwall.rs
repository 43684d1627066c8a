fn main() {
    std::process::exit(gronwall::cli::main_with_args(std::env::args_os()));
}

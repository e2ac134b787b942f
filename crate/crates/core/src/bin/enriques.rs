fn main() {
    std::process::exit(enriques::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(hardgap::cli::main_with_args(std::env::args_os()));
}

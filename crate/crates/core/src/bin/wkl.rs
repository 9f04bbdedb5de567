fn main() {
    std::process::exit(wkl::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(pdiffusion::cli::main_with_args(std::env::args_os()));
}

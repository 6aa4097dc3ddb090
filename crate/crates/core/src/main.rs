fn main() {
    std::process::exit(hopfion::cli::main_with_args(std::env::args().collect()));
}

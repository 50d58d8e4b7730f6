fn main() {
    std::process::exit(hyperlat::cli::main_with_args(std::env::args()));
}

fn main() {
    std::process::exit(two_ecss::cli::main(std::env::args()));
}

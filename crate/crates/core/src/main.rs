fn main() {
    std::process::exit(phasefit::cli::run(std::env::args().skip(1)));
}

fn main() {
    std::process::exit(hypersens::cli::run(std::env::args().collect()));
}

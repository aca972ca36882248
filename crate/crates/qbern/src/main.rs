fn main() {
    std::process::exit(qbern::cli::run(std::env::args()));
}

fn main() {
    std::process::exit(crystals::cli::run());
}

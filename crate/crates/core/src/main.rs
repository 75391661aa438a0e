fn main() {
    std::process::exit(limbfield::bench::cli::run());
}

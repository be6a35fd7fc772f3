fn main() {
    std::process::exit(specgeo::cli::run());
}

fn main() {
    std::process::exit(envlat::cli::run());
}

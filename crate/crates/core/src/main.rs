fn main() {
    std::process::exit(dirac_magneto::cli::run());
}

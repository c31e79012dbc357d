fn main() {
    std::process::exit(spectral_nil_cli::run());
}

fn main() {
    std::process::exit(plumbing_core::cli::run());
}

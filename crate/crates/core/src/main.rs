fn main() {
    std::process::exit(gateforge::cli::run());
}

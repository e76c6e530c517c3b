fn main() {
    std::process::exit(elliptic_k3::cli::main());
}

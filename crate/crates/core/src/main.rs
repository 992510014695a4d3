fn main() {
    std::process::exit(geodd::cli::main());
}

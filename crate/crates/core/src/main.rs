fn main() {
    std::process::exit(semirel::cli::main());
}

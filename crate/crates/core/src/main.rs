fn main() {
    std::process::exit(functcat::cli::main());
}

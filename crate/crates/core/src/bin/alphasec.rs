fn main() {
    std::process::exit(alphasec::cli::main());
}

fn main() {
    std::process::exit(matcrystal::cli::main());
}

fn main() {
    std::process::exit(spacetime_sim::cli::main());
}

fn main() {
    std::process::exit(jacobi_seed::cli::main_from_env());
}

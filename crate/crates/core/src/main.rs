fn main() {
    std::process::exit(kdouble::cli::main_with_env());
}

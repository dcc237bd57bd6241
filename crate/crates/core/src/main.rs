fn main() {
    std::process::exit(abnormal_forge::cli::main_from_env());
}

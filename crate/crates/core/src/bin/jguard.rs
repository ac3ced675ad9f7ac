fn main() {
    std::process::exit(jguard::cli::run(std::env::args_os()));
}

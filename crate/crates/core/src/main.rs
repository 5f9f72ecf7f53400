fn main() {
    std::process::exit(bundlex::cli::run_command(std::env::args_os()));
}

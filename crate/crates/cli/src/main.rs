fn main() {
    std::process::exit(fibered_cli::run(std::env::args_os()));
}

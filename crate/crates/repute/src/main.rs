fn main() {
    std::process::exit(repute::cli::run(std::env::args_os()));
}

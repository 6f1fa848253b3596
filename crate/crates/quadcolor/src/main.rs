fn main() {
    std::process::exit(quadcolor::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(ballq::cli::run(std::env::args_os()));
}

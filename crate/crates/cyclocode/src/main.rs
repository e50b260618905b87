fn main() {
    std::process::exit(cyclocode::cli::run_cli(std::env::args().skip(1)));
}

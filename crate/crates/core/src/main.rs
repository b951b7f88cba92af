fn main() {
    std::process::exit(agcodes::cli::run(std::env::args_os()));
}

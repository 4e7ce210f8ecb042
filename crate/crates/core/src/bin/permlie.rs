fn main() {
    std::process::exit(permlie::cli::run(std::env::args_os()));
}

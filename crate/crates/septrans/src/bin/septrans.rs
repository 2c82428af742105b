fn main() {
    std::process::exit(septrans::cli::run(std::env::args_os()));
}

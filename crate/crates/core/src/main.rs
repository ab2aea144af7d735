fn main() {
    std::process::exit(spectrokit::cli::run(std::env::args_os()));
}

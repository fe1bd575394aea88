fn main() {
    std::process::exit(tiltbench::cli::run(std::env::args_os()));
}

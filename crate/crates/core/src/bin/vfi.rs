fn main() {
    std::process::exit(vfi::cli::run_cli(std::env::args_os()));
}

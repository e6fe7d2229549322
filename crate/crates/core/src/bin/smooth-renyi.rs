fn main() {
    std::process::exit(smooth_renyi::cli::run_cli(std::env::args_os()));
}

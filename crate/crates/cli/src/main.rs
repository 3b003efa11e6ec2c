fn main() {
    std::process::exit(ggbm_cli::app::run(std::env::args_os()));
}

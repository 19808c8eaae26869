fn main() {
    std::process::exit(betafin_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(fhaim_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(nrange::cli_io::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(ffp_cli::run(std::env::args_os()));
}

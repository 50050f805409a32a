fn main() {
    std::process::exit(fairseed_cli::run(std::env::args_os()));
}

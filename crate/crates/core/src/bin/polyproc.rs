fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(polyproc::sysio::cli::run_cli(&argv));
}

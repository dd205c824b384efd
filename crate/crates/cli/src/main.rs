fn main() {
    std::process::exit(torsig_cli::run(std::env::args_os()));
}

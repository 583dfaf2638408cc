fn main() {
    std::process::exit(terncode_cli::run(std::env::args_os()));
}

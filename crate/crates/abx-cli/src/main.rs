fn main() {
    std::process::exit(abx_cli::main_with(std::env::args_os()));
}

fn main() {
    std::process::exit(symqaoa_cli::main_with(std::env::args_os()));
}

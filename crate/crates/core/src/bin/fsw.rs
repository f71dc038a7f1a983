fn main() {
    std::process::exit(fsw_core::cli::run_command(std::env::args_os()));
}

fn main() {
    std::process::exit(schur_kernel::cli::main_with_args(std::env::args_os()));
}

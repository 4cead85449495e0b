fn main() {
    std::process::exit(semigroup_envelope::cli::main_with_args(std::env::args_os()));
}

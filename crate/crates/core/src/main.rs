fn main() {
    std::process::exit(caypat::cli::run(std::env::args_os()));
}

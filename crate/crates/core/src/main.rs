fn main() {
    std::process::exit(weno_lab::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(fialg::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(rsquad::cli::run(std::env::args_os()));
}

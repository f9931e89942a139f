fn main() {
    let code = liecascade::cli::run(std::env::args().collect());
    std::process::exit(code);
}

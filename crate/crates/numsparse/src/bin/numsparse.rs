fn main() {
    std::process::exit(numsparse::cli::run(std::env::args()));
}

fn main() {
    std::process::exit(weightnet::cli::run(std::env::args_os()));
}

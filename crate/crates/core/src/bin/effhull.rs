fn main() {
    std::process::exit(effhull::cli::run(std::env::args_os()));
}

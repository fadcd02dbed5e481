fn main() {
    std::process::exit(affine_derangements::cli::run(std::env::args_os()));
}

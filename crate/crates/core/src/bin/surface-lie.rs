fn main() {
    std::process::exit(surface_lie::cli::run(std::env::args_os()));
}

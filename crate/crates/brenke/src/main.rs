fn main() {
    std::process::exit(brenke::cli::run(std::env::args_os()));
}

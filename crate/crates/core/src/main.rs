fn main() {
    std::process::exit(datafy::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(treeperc::cli::run(std::env::args_os()));
}

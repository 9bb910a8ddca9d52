fn main() {
    std::process::exit(clusterq::cli::run(std::env::args_os()));
}

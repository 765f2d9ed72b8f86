fn main() {
    std::process::exit(wiretap_lattice::cli::run(std::env::args_os()));
}

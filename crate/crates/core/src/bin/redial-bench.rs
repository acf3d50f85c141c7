fn main() {
    std::process::exit(redial_bench::cli::run(std::env::args_os()));
}

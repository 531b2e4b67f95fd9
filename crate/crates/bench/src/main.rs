fn main() {
    std::process::exit(nsga_bench::run(std::env::args_os()));
}

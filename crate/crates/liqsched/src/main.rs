fn main() {
    std::process::exit(liqsched::cli::run());
}

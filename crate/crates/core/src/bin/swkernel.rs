fn main() {
    std::process::exit(swkernel::cli::run())
}

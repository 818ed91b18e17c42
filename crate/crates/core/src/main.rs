fn main() {
    std::process::exit(mpp_core::cli::run(std::env::args_os()));
}

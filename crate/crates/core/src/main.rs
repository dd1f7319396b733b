fn main() {
    std::process::exit(anomaly_forms::cli::run(std::env::args_os()));
}

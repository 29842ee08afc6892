fn main() {
    std::process::exit(prcldpc::cli::main());
}

fn main() {
    std::process::exit(ttsupport::cli::main());
}

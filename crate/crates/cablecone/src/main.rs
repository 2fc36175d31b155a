fn main() -> std::process::ExitCode {
    cablecone::cli::main_entry()
}

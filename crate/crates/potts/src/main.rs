fn main() -> std::process::ExitCode {
    potts::cli::main()
}

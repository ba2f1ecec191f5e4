fn main() -> std::process::ExitCode {
    physec::cli::main()
}

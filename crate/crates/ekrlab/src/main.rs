fn main() {
    ekrlab::cli::main()
}

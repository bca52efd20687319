fn main() {
    std::process::exit(quasigalois::cli::main_entry());
}

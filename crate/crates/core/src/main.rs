fn main() {
    std::process::exit(labelcover::cli::main_entry());
}

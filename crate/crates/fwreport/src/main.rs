fn main() {
    std::process::exit(fwreport::cli::main_entry());
}

fn main() {
    std::process::exit(stieltjes_wigert::harness::cli::main_exit_code());
}

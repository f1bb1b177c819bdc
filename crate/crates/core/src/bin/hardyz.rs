fn main() {
    std::process::exit(hardyz::cli::cli_main(std::env::args_os()));
}

fn main() {
    std::process::exit(borel_lab::cli::cli_main(std::env::args_os()));
}

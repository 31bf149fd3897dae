fn main() {
    std::process::exit(hplus_topo::cli::cli_main(std::env::args_os()));
}

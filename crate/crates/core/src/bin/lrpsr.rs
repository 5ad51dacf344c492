fn main() {
    std::process::exit(lrpsr::harness::cli_main(std::env::args_os()));
}

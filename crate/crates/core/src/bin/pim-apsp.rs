fn main() {
    std::process::exit(pim_apsp::experiment::run_cli(std::env::args_os()));
}

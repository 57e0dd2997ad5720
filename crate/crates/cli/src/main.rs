use std::process::exit;

fn main() {
    exit(cli::run(std::env::args_os()));
}

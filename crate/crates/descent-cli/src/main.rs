use clap::Parser;

use descent_cli::cli::{execute, Cli};

fn main() {
    std::process::exit(execute(Cli::parse()));
}

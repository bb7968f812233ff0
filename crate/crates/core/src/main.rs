use clap::Parser;

use expspec::cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}

use clap::Parser;

use sqnorm::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    let code = cli::run(&args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}

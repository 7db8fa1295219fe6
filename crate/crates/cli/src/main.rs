use clap::Parser;
use hyperfield_cli::commands::{main_with, Cli};

fn main() {
    let cli = Cli::parse();
    let code = main_with(&cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}

use clap::Parser;
use qwalk2c_cli::{args::Cli, run};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("qwalk2c: {e}");
        std::process::exit(e.exit_code());
    }
}

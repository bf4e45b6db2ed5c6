use clap::Parser;

fn main() {
    let cli = braidseed_cli::Cli::parse();
    std::process::exit(braidseed_cli::run_cli(cli));
}

use clap::Parser;

fn main() {
    let cli = parcat::cli::Cli::parse();
    std::process::exit(parcat::cli::run(cli));
}

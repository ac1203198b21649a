use clap::Parser;

fn main() {
    let cli = qci::cli::Cli::parse();
    std::process::exit(qci::cli::run(&cli));
}

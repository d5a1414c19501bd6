use clap::Parser;

fn main() {
    let cli = qschur::cli::Cli::parse();
    std::process::exit(qschur::cli::run(cli));
}

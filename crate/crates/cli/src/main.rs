use clap::Parser;

fn main() {
    let cli = specforge::args::Cli::parse();
    std::process::exit(specforge::run(&cli));
}

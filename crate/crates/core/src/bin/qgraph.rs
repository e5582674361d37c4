use clap::Parser;

fn main() {
    let config = qgraph::cli::RunConfig::parse();
    let code = qgraph::cli::run(
        &config,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}

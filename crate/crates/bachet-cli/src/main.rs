use clap::Parser;

fn main() {
    // clap exits with 2 on usage errors and 0 for --help/--version
    let cli = match bachet_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => err.exit(),
    };
    std::process::exit(bachet_cli::run(cli));
}

use clap::Parser;

use cmcone::cli::{report_error, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            report_error(&err);
            std::process::exit(err.exit_code());
        }
    }
}

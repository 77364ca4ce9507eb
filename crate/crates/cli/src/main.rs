use clap::Parser;

use sixdof_cli::{run, Cli, CliError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            if err.use_stderr() {
                eprintln!("{err}");
                std::process::exit(CliError::Usage(String::new()).exit_code());
            }
            print!("{err}");
            return;
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {}", err.message());
        std::process::exit(err.exit_code());
    }
}

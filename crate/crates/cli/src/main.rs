//! `gk2`: tables and checks for the second generalized GK curves.
//!
//! Exit codes: 0 success, 1 usage error, 2 internal consistency failure,
//! 3 a point that needs local resolution.

mod commands;
mod output;

use clap::Parser;

use commands::Command;

#[derive(Debug, Parser)]
#[command(
    name = "gk2",
    version,
    about = "Weierstrass semigroups, AG codes and quantum codes from GK(2, n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn configure_threads() {
    if let Some(n) = std::env::var("GK2_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    configure_threads();
    let result = commands::run(&cli.command)
        .and_then(|(text, path)| output::emit(&text, path.as_deref()).map_err(Into::into));
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

mod args;
mod commands;
mod manifest;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: could not set --jobs: {e}");
        }
    }
    if let Err(e) = commands::dispatch(&cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

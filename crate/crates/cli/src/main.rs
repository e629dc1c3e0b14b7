use clap::Parser;
use qps::config::Cli;
use qps::{run, thread_count, EXIT_USAGE, THREADS_ENV};

fn main() {
    let cli = Cli::parse();
    let threads = match thread_count(std::env::var(THREADS_ENV).ok().as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_USAGE);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: thread pool: {e}");
        std::process::exit(EXIT_USAGE);
    }
    std::process::exit(run(&cli.command));
}

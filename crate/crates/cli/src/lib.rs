//! The `qps` command-line tool: argument handling, table formats and the
//! subcommands built on `qps-core`.

pub mod commands;
pub mod config;
pub mod format;

use std::io::Write;

use commands::CommandError;
use config::{Command, Format, RunConfig};
use format::Document;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

/// Environment variable capping the worker threads (0 = automatic).
pub const THREADS_ENV: &str = "QPS_THREADS";

pub fn thread_count(value: Option<&str>) -> Result<usize, String> {
    match value {
        None => Ok(0),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got `{s}`")),
    }
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Csv => doc.to_csv(),
        Format::Json => doc.to_json(),
    }
}

fn emit(doc: &Document, cfg: &RunConfig) -> Result<(), String> {
    let text = render(doc, cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| e.to_string())
        }
    }
}

/// Runs one subcommand and returns the process exit code.
pub fn run(command: &Command) -> i32 {
    let (common, mu_list) = match command {
        Command::Poly(c) | Command::Verify(c) => (c, None),
        Command::Theta(a) | Command::AngleDist(a) => (&a.common, a.mu_list.as_deref()),
        Command::ActionDist(a) => (&a.common, None),
        Command::Wigner(a) => (&a.common, None),
    };
    let cfg = match RunConfig::new(common, mu_list) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match command {
        Command::Poly(_) => commands::cmd_poly(&cfg).map(|d| (d, true)),
        Command::Theta(_) => commands::cmd_theta(&cfg).map(|d| (d, true)),
        Command::AngleDist(_) => commands::cmd_angle_dist(&cfg).map(|d| (d, true)),
        Command::ActionDist(a) => commands::cmd_action_dist(&cfg, a.m_range).map(|d| (d, true)),
        Command::Wigner(a) => commands::cmd_wigner(&cfg, a.m).map(|d| (d, true)),
        Command::Verify(_) => commands::cmd_verify(&cfg).map(|v| (v.document, v.passed)),
    };
    match result {
        Ok((doc, passed)) => {
            if let Err(e) = emit(&doc, &cfg) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if passed {
                EXIT_OK
            } else {
                if let Some(failed) = doc.meta.get("failed") {
                    eprintln!("verification failed: {failed}");
                }
                EXIT_VERIFY_FAILED
            }
        }
        Err(e @ CommandError::Config(_)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e @ CommandError::NonConvergence(_)) => {
            eprintln!("error: {e}");
            EXIT_NON_CONVERGENCE
        }
    }
}

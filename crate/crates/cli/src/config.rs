//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qps_core::wigner::PhaseGrid;
use qps_core::QParam;

pub const MIN_GRID_POINTS: usize = 8;
pub const DEFAULT_MU_LIST: [f64; 3] = [0.1, 0.5, 1.0];

#[derive(Debug, Parser)]
#[command(name = "qps", version, about = "q-deformed oscillator phase-space numerics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rogers-Szegő coefficients of H_0..H_n and |R_k|² on the grid
    Poly(CommonArgs),
    /// θ₃ on the grid
    Theta(ListArgs),
    /// Angle distribution Ω⁽ⁿ⁾ on the grid
    AngleDist(ListArgs),
    /// Action distribution Λ⁽ⁿ⁾(m) over a range of m
    ActionDist(ActionArgs),
    /// Wigner function O_n(m, θ) on the grid at fixed m
    Wigner(WignerArgs),
    /// Algebra, orthogonality, θ₃ and marginal checks with a pass/fail report
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Deformation parameter, 0 < q < 1
    #[arg(long, value_parser = parse_q, conflicts_with = "mu")]
    pub q: Option<f64>,
    /// μ = -ln(q)/2 > 0
    #[arg(long, value_parser = parse_mu)]
    pub mu: Option<f64>,
    /// State index (basis size for `verify`)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 256, value_parser = parse_grid_points)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 1e-12, value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ListArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// One output column per μ; bare flag means 0.1,0.5,1.0
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 0..,
        default_missing_value = "0.1,0.5,1.0",
        value_parser = parse_mu,
        conflicts_with_all = ["q", "mu"]
    )]
    pub mu_list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ActionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Inclusive range A:B of action indices
    #[arg(long, default_value = "-2:10", value_parser = parse_m_range, allow_hyphen_values = true)]
    pub m_range: (i64, i64),
}

#[derive(Debug, Clone, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("`{s}` is not a number: {e}"))
}

fn parse_q(s: &str) -> Result<f64, String> {
    let q = parse_f64(s)?;
    QParam::from_q(q).map(|_| q).map_err(|e| e.to_string())
}

fn parse_mu(s: &str) -> Result<f64, String> {
    let mu = parse_f64(s)?;
    QParam::from_mu(mu).map(|_| mu).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let tol = parse_f64(s)?;
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(format!("tolerance must be finite and > 0, got {tol}"))
    }
}

fn parse_grid_points(s: &str) -> Result<usize, String> {
    let k: usize = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if k < MIN_GRID_POINTS {
        return Err(format!("need at least {MIN_GRID_POINTS} grid points, got {k}"));
    }
    Ok(k)
}

fn parse_m_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    if b < a {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// One entry, or one per `--mu-list` value.
    pub params: Vec<QParam>,
    pub n: Option<usize>,
    pub grid: PhaseGrid,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(common: &CommonArgs, mu_list: Option<&[f64]>) -> Result<Self, String> {
        let params = match (common.q, common.mu, mu_list) {
            (_, _, Some([])) => return Err("--mu-list needs at least one value".into()),
            (None, None, Some(list)) => list
                .iter()
                .map(|&m| QParam::from_mu(m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?,
            (Some(q), None, None) => vec![QParam::from_q(q).map_err(|e| e.to_string())?],
            (None, Some(mu), None) => vec![QParam::from_mu(mu).map_err(|e| e.to_string())?],
            (None, None, None) => return Err("one of --q or --mu is required".into()),
            _ => return Err("--q, --mu and --mu-list are mutually exclusive".into()),
        };
        Ok(RunConfig {
            params,
            n: common.n,
            grid: PhaseGrid::new(common.grid_points).map_err(|e| e.to_string())?,
            tol: common.tol,
            format: common.format,
            out: common.out.clone(),
        })
    }

    pub fn single(&self) -> &QParam {
        &self.params[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("qps").chain(args.iter().copied()))
    }

    #[test]
    fn q_is_checked_at_parse_time() {
        let err = parse(&["poly", "--q", "1.5"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(parse(&["poly", "--q", "0"]).is_err());
        assert!(parse(&["poly", "--mu", "-1"]).is_err());
        assert!(parse(&["poly", "--q", "0.5", "--mu", "1"]).is_err());
        assert!(parse(&["poly", "--q", "0.5", "--grid-points", "4"]).is_err());
        assert!(parse(&["poly", "--q", "0.5", "--tol", "0"]).is_err());
    }

    #[test]
    fn mu_list_defaults_when_bare() {
        let cli = parse(&["angle-dist", "--mu-list"]).unwrap();
        let Command::AngleDist(args) = cli.command else { panic!() };
        assert_eq!(args.mu_list.as_deref(), Some(&DEFAULT_MU_LIST[..]));
        let cli = parse(&["angle-dist", "--mu-list", "0.2,0.3"]).unwrap();
        let Command::AngleDist(args) = cli.command else { panic!() };
        assert_eq!(args.mu_list.as_deref(), Some(&[0.2, 0.3][..]));
        let cfg = RunConfig::new(&args.common, args.mu_list.as_deref()).unwrap();
        assert_eq!(cfg.params.len(), 2);
        assert!(parse(&["angle-dist", "--q", "0.5", "--mu-list", "0.2"]).is_err());
    }

    #[test]
    fn m_range_accepts_negative_bounds() {
        let cli = parse(&["action-dist", "--q", "0.5", "--m-range", "-2:6"]).unwrap();
        let Command::ActionDist(args) = cli.command else { panic!() };
        assert_eq!(args.m_range, (-2, 6));
        assert!(parse(&["action-dist", "--q", "0.5", "--m-range", "3:1"]).is_err());
        assert!(parse(&["action-dist", "--q", "0.5", "--m-range", "3"]).is_err());
        let cli = parse(&["wigner", "--q", "0.5", "--m", "-3"]).unwrap();
        let Command::Wigner(args) = cli.command else { panic!() };
        assert_eq!(args.m, -3);
    }

    #[test]
    fn q_or_mu_is_required() {
        let cli = parse(&["poly"]).unwrap();
        let Command::Poly(args) = cli.command else { panic!() };
        assert!(RunConfig::new(&args, None).is_err());
    }
}

//! The subcommands. Each returns a [`Document`]; `verify` also reports
//! whether every check passed.

use std::fmt;

use qps_core::qalgebra::{verify_algebra, Relation};
use qps_core::rspoly::{rs_coefficients, RsFunctions};
use qps_core::theta::{theta3, theta3_gaussian, theta3_series};
use qps_core::wigner::{
    action_table, angle_table, carlitz_closed_form, carlitz_double_sum, orthogonality_quadrature,
    theta_bandwidth, t_cutoff, DistributionTable, PhaseGrid, WignerKernel,
};
use qps_core::{Error, QParam};
use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::format::{Cell, Document, Table};

#[derive(Debug)]
pub enum CommandError {
    Config(String),
    NonConvergence(String),
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Config(m) => write!(f, "configuration error: {m}"),
            CommandError::NonConvergence(m) => write!(f, "numerical non-convergence: {m}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        if e.is_non_convergence() {
            CommandError::NonConvergence(e.to_string())
        } else {
            CommandError::Config(e.to_string())
        }
    }
}

pub type CmdResult<T> = Result<T, CommandError>;

fn param_meta(qp: &QParam) -> serde_json::Value {
    json!({ "q": qp.q(), "mu": qp.mu() })
}

fn base_doc(command: &str, cfg: &RunConfig, n: usize) -> Document {
    let mut doc = Document::new(command);
    doc.set("n", json!(n));
    doc.set("tol", json!(cfg.tol));
    doc.set("grid_points", json!(cfg.grid.len()));
    doc.set("params", cfg.params.iter().map(param_meta).collect());
    doc
}

/// Column name, tagged with μ when several parameters are tabulated.
fn column_name(base: &str, qp: &QParam, many: bool) -> String {
    if many {
        format!("{base}[mu={}]", qp.mu())
    } else {
        base.to_owned()
    }
}

pub fn cmd_poly(cfg: &RunConfig) -> CmdResult<Document> {
    let n = cfg.n.unwrap_or(0);
    let qp = cfg.single();
    let mut doc = base_doc("poly", cfg, n);

    let mut coeffs = Table::new(
        "coefficients",
        (0..=n).map(|r| format!("c{r}")).collect(),
    );
    for k in 0..=n {
        let h = rs_coefficients(k, qp);
        coeffs.push(h.coeffs().iter().map(|c| Cell::Num(c.re)).collect());
    }

    let mut columns = vec!["theta".to_owned()];
    columns.extend((0..=n).map(|k| format!("abs_R{k}_sq")));
    let mut samples = Table::new("rs_functions", columns);
    let rs = RsFunctions::new(n, qp);
    let rows: Vec<Vec<Cell>> = cfg
        .grid
        .points()
        .par_iter()
        .map(|&t| {
            let mut row = vec![Cell::Num(t)];
            row.extend(rs.eval_all(t).iter().map(|r| Cell::Num(r.norm_sqr())));
            row
        })
        .collect();
    samples.rows = rows;
    doc.tables = vec![coeffs, samples];
    Ok(doc)
}

pub fn cmd_theta(cfg: &RunConfig) -> CmdResult<Document> {
    let mut doc = base_doc("theta", cfg, cfg.n.unwrap_or(0));
    let many = cfg.params.len() > 1;
    let points = cfg.grid.points();
    let mut columns = vec!["theta".to_owned()];
    let mut per_param = Vec::new();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for qp in &cfg.params {
        columns.push(column_name("theta3", qp, many));
        let evals = points
            .par_iter()
            .map(|&t| theta3(t, qp, cfg.tol))
            .collect::<Result<Vec<_>, _>>()?;
        let terms = evals.iter().map(|e| e.terms_used).max().unwrap_or(0);
        per_param.push(json!({
            "q": qp.q(),
            "mu": qp.mu(),
            "representation": evals[0].representation.as_str(),
            "terms": terms,
        }));
        cols.push(evals.iter().map(|e| e.value).collect());
    }
    doc.set("params", json!(per_param));
    doc.tables = vec![columns_table("theta3", columns, &points, &cols)];
    Ok(doc)
}

fn columns_table(name: &str, columns: Vec<String>, points: &[f64], cols: &[Vec<f64>]) -> Table {
    let mut table = Table::new(name, columns);
    for (k, &t) in points.iter().enumerate() {
        let mut row = vec![Cell::Num(t)];
        row.extend(cols.iter().map(|c| Cell::Num(c[k])));
        table.push(row);
    }
    table
}

pub fn cmd_angle_dist(cfg: &RunConfig) -> CmdResult<Document> {
    let n = cfg.n.unwrap_or(0);
    let mut doc = base_doc("angle-dist", cfg, n);
    let many = cfg.params.len() > 1;
    let tables = cfg
        .params
        .par_iter()
        .map(|qp| angle_table(n, qp, &cfg.grid, cfg.tol))
        .collect::<Result<Vec<DistributionTable>, _>>()?;
    let mut columns = vec!["theta".to_owned()];
    columns.extend(cfg.params.iter().map(|qp| column_name("omega", qp, many)));
    doc.set(
        "params",
        json!(tables
            .iter()
            .map(|t| json!({
                "q": t.q,
                "mu": t.mu,
                "theta3_terms": t.metadata.terms,
                "normalization": t.total(),
            }))
            .collect::<Vec<_>>()),
    );
    let cols: Vec<Vec<f64>> = tables.iter().map(|t| t.values.clone()).collect();
    doc.tables = vec![columns_table("angle_distribution", columns, &cfg.grid.points(), &cols)];
    Ok(doc)
}

pub fn cmd_action_dist(cfg: &RunConfig, m_range: (i64, i64)) -> CmdResult<Document> {
    let n = cfg.n.unwrap_or(0);
    let qp = cfg.single();
    let mut doc = base_doc("action-dist", cfg, n);
    let table = action_table(n, m_range.0, m_range.1, qp, &cfg.grid, cfg.tol)?;
    doc.set("t_cut", json!(table.metadata.terms));
    doc.set("total", json!(table.total()));
    let mut out = Table::new("action_distribution", vec!["m".into(), "lambda".into()]);
    for (m, v) in (m_range.0..=m_range.1).zip(&table.values) {
        out.push(vec![Cell::Int(m), Cell::Num(*v)]);
    }
    doc.tables = vec![out];
    Ok(doc)
}

pub fn cmd_wigner(cfg: &RunConfig, m: i64) -> CmdResult<Document> {
    let n = cfg.n.unwrap_or(0);
    let qp = cfg.single();
    let mut doc = base_doc("wigner", cfg, n);
    let kernel = WignerKernel::new(n, qp, cfg.tol)?;
    let slice = kernel.slice(m);
    doc.set("m", json!(m));
    doc.set("t_cut", json!(kernel.t_cut()));
    doc.set("theta_average", json!(slice.mean()));
    let points = cfg.grid.points();
    let values: Vec<_> = points.par_iter().map(|&t| slice.eval(t)).collect();
    let mut out = Table::new("wigner", vec!["theta".into(), "re".into(), "im".into()]);
    for (&t, v) in points.iter().zip(&values) {
        out.push(vec![Cell::Num(t), Cell::Num(v.re), Cell::Num(v.im)]);
    }
    doc.tables = vec![out];
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            passed: residual < tolerance,
        }
    }
}

/// A grid at least as fine as `base` that resolves `bandwidth` Fourier
/// modes; sizes are powers of two once refined.
fn resolving_grid(base: &PhaseGrid, bandwidth: usize) -> PhaseGrid {
    let need = 2 * bandwidth + 2;
    if base.len() >= need {
        *base
    } else {
        PhaseGrid::new(need.next_power_of_two()).expect("non-empty")
    }
}

pub struct VerifyOutcome {
    pub document: Document,
    pub passed: bool,
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdResult<VerifyOutcome> {
    let n_max = cfg.n.unwrap_or(10);
    if n_max < 2 {
        return Err(CommandError::Config(format!("verify needs --n >= 2, got {n_max}")));
    }
    let qp = cfg.single();
    let tol = cfg.tol;
    let mut checks = Vec::new();

    let algebra = verify_algebra(n_max, qp, tol)?;
    for rel in Relation::ALL {
        checks.push(Check::new(
            format!("algebra {}", rel.name()),
            algebra.residual(rel),
            tol,
        ));
    }

    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|m| (0..=n_max).map(move |n| (m, n)))
        .collect();
    let grid = resolving_grid(&cfg.grid, theta_bandwidth(n_max, n_max, qp, tol));
    let ortho = pairs
        .par_iter()
        .map(|&(m, n)| -> CmdResult<(f64, f64)> {
            let cf = carlitz_closed_form(m, n, qp);
            let ds = carlitz_double_sum(m, n, qp);
            let ds_err = if m == n { ((ds - cf) / cf).abs() } else { ds.abs() };
            let quad = orthogonality_quadrature(m, n, qp, &grid, tol)?;
            let scale = (carlitz_closed_form(m, m, qp) * carlitz_closed_form(n, n, qp)).sqrt();
            Ok((ds_err, (quad.value - cf).abs() / scale))
        })
        .collect::<CmdResult<Vec<_>>>()?;
    checks.push(Check::new(
        "orthogonality double sum vs closed form",
        ortho.iter().map(|e| e.0).fold(0.0, f64::max),
        tol,
    ));
    checks.push(Check::new(
        "orthogonality quadrature vs closed form",
        ortho.iter().map(|e| e.1).fold(0.0, f64::max),
        tol,
    ));

    let points = grid.points();
    let peak = theta3_gaussian(0.0, qp, tol * 1e-3)?.value;
    let dual = points
        .par_iter()
        .map(|&t| -> CmdResult<f64> {
            let a = theta3_series(t, qp, tol * 1e-3)?.value;
            let b = theta3_gaussian(t, qp, tol * 1e-3)?.value;
            Ok((a - b).abs() / peak)
        })
        .collect::<CmdResult<Vec<_>>>()?;
    checks.push(Check::new(
        "theta3 series vs gaussian (scaled by theta3(0))",
        dual.into_iter().fold(0.0, f64::max),
        tol,
    ));

    // marginals of every state in the basis
    let t_cut = t_cutoff(qp, tol)? as usize;
    let wgrid = resolving_grid(&cfg.grid, t_cut + n_max);
    let marginals = (0..=n_max)
        .into_par_iter()
        .map(|n| -> CmdResult<(f64, f64)> {
            let angle = angle_table(n, qp, &wgrid, tol * 1e-3)?;
            let action = action_table(n, -2, n_max as i64 + 2, qp, &wgrid, tol)?;
            // near q = 1 the Wigner values are large and cancel in the
            // average, so the defect is measured against their size
            let kernel = WignerKernel::new(n, qp, tol)?;
            let delta = (-2..=n_max as i64 + 2)
                .zip(&action.values)
                .map(|(m, v)| {
                    let slice = kernel.slice(m);
                    let size = wgrid
                        .points()
                        .iter()
                        .map(|&t| slice.eval(t).norm())
                        .fold(1.0, f64::max);
                    (v - if m == n as i64 { 1.0 } else { 0.0 }).abs() / size
                })
                .fold(0.0, f64::max);
            Ok(((angle.total() - 1.0).abs(), delta))
        })
        .collect::<CmdResult<Vec<_>>>()?;
    checks.push(Check::new(
        "angle marginal normalization",
        marginals.iter().map(|e| e.0).fold(0.0, f64::max),
        tol,
    ));
    checks.push(Check::new(
        "action marginal vs kronecker delta (scaled by max |O|)",
        marginals.iter().map(|e| e.1).fold(0.0, f64::max),
        tol,
    ));

    let one = angle_table(1, qp, &cfg.grid, tol * 1e-3)?;
    let (q, mu) = (qp.q(), qp.mu());
    let closed = points_err(&cfg.grid.points(), &one.values, |t| -> CmdResult<f64> {
        // 1 - 2e^μ cosθ + e^{2μ}, rearranged to avoid cancellation at θ = 0
        let gap = mu.exp_m1().powi(2) + 4.0 * mu.exp() * (0.5 * t).sin().powi(2);
        Ok(q / (1.0 - q) * gap * theta3(t, qp, tol * 1e-3)?.value)
    })?;
    checks.push(Check::new("angle marginal n=1 closed form (relative)", closed, tol));

    let passed = checks.iter().all(|c| c.passed);
    let mut doc = base_doc("verify", cfg, n_max);
    doc.set("passed", json!(passed));
    doc.set(
        "commutator_identity_deviation",
        json!(algebra.commutator_identity_deviation),
    );
    doc.set(
        "classical_limit_note",
        json!("max |[A,A+] - 1| on the interior block; tends to 0 as q -> 1"),
    );
    doc.set("orthogonality_grid_points", json!(grid.len()));
    doc.set("marginal_grid_points", json!(wgrid.len()));
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    doc.set("failed", json!(failed));
    let mut table = Table::new(
        "checks",
        vec!["check".into(), "residual".into(), "tolerance".into(), "passed".into()],
    );
    for c in &checks {
        table.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Num(c.residual),
            Cell::Num(c.tolerance),
            Cell::Text(c.passed.to_string()),
        ]);
    }
    doc.tables = vec![table];
    Ok(VerifyOutcome {
        document: doc,
        passed,
    })
}

/// Largest relative gap between `values` and `f` at the points.
fn points_err(
    points: &[f64],
    values: &[f64],
    f: impl Fn(f64) -> CmdResult<f64> + Sync,
) -> CmdResult<f64> {
    let errs = points
        .par_iter()
        .zip(values)
        .map(|(&t, &v)| {
            let want = f(t)?;
            Ok((v - want).abs() / want.abs().max(f64::MIN_POSITIVE))
        })
        .collect::<CmdResult<Vec<f64>>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

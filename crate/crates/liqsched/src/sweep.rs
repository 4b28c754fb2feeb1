//! Parameter-sweep harness: grids over market parameters, evaluated to
//! CSV-ready rows.
//!
//! A sweep is declared in JSON as a base market plus one or two arithmetic
//! axes addressed by dotted parameter paths:
//!
//! ```json
//! {
//!   "base": { "s0": [50.0, 100.0], "x0": [1e7, 8e6],
//!             "sigma": [[0.08, 0.02], [0.1, 0.03]],
//!             "gamma": [[3e-9, 1e-9], [2e-9, 5e-9]],
//!             "eta": [3e-8, 5e-8] },
//!   "axes": [ { "path": "eta.1", "start": 3e-8, "step": 3e-9, "count": 11 },
//!             { "path": "eta.2", "start": 5e-8, "step": 5e-9, "count": 11 } ],
//!   "metrics": ["t_star", "mcpw"],
//!   "mc": { "reps": 1000, "seed": 42, "steps": 100 }
//! }
//! ```
//!
//! Paths use 1-based asset indices to match the superscript notation
//! (`sigma.1.2` is row 1, column 2).  Rows come out in row-major axis
//! order: the first axis is the slow one.  A grid point whose parameters
//! fail validation or degenerate numerically becomes a failed row carrying
//! `NaN` metrics and the error text; it never aborts the sweep.

use liqsched_core::montecarlo::{self, McConfig};
use liqsched_core::optimizer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::ParamsFile;

/// A recordable quantity at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Closed-form optimal horizon.
    TStar,
    /// Mean total cost rate over the Monte Carlo replications.
    Mcpw,
    /// Two-asset correlation, cross-volatility form.
    RhoPaper,
    /// Two-asset correlation, standard inner-product form.
    RhoStandard,
    /// The `sigma[1][2]` entry itself (useful when an axis derives it).
    Sigma12,
    /// `|sigma[1][1] - sigma[1][2]|`.
    Absdiff,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::TStar => "t_star",
            Metric::Mcpw => "mcpw",
            Metric::RhoPaper => "rho_paper",
            Metric::RhoStandard => "rho_standard",
            Metric::Sigma12 => "sigma12",
            Metric::Absdiff => "absdiff",
        }
    }
}

/// A dotted parameter path with 1-based indices: `eta.2`, `sigma.1.2`,
/// `gamma.2.1`, `x0.1`, `s0.2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    S0(usize),
    X0(usize),
    Eta(usize),
    Sigma(usize, usize),
    Gamma(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPath {
    target: Target,
    name: String,
}

fn parse_index(part: &str, path: &str) -> Result<usize> {
    let i: usize = part
        .parse()
        .map_err(|_| Error::Validation(format!("bad index `{part}` in parameter path `{path}`")))?;
    if i == 0 {
        return Err(Error::Validation(format!(
            "parameter path `{path}` uses 1-based indices"
        )));
    }
    Ok(i - 1)
}

impl ParamPath {
    pub fn parse(path: &str) -> Result<Self> {
        let parts: Vec<&str> = path.split('.').collect();
        let target = match parts.as_slice() {
            [field, i] => {
                let i = parse_index(i, path)?;
                match *field {
                    "s0" => Target::S0(i),
                    "x0" => Target::X0(i),
                    "eta" => Target::Eta(i),
                    other => {
                        return Err(Error::Validation(format!(
                            "unknown vector parameter `{other}` in path `{path}`"
                        )))
                    }
                }
            }
            [field, i, j] => {
                let i = parse_index(i, path)?;
                let j = parse_index(j, path)?;
                match *field {
                    "sigma" => Target::Sigma(i, j),
                    "gamma" => Target::Gamma(i, j),
                    other => {
                        return Err(Error::Validation(format!(
                            "unknown matrix parameter `{other}` in path `{path}`"
                        )))
                    }
                }
            }
            _ => {
                return Err(Error::Validation(format!(
                    "parameter path `{path}` must look like `eta.1` or `sigma.1.2`"
                )))
            }
        };
        Ok(Self {
            target,
            name: path.replace('.', ""),
        })
    }

    /// The CSV column name: the dotted path with dots dropped
    /// (`sigma.1.2` -> `sigma12`).
    pub fn column_name(&self) -> &str {
        &self.name
    }

    /// Writes `value` into the addressed slot, bounds-checked against the
    /// file's dimensions.
    pub fn apply(&self, file: &mut ParamsFile, value: f64) -> Result<()> {
        fn slot<'v>(v: &'v mut [f64], i: usize, what: &str) -> Result<&'v mut f64> {
            let len = v.len();
            v.get_mut(i).ok_or_else(|| {
                Error::Validation(format!("{what} index {} out of range for {len} assets", i + 1))
            })
        }
        fn cell<'v>(m: &'v mut [Vec<f64>], i: usize, j: usize, what: &str) -> Result<&'v mut f64> {
            let rows = m.len();
            let row = m.get_mut(i).ok_or_else(|| {
                Error::Validation(format!("{what} row {} out of range for {rows} assets", i + 1))
            })?;
            slot(row, j, what)
        }
        let dst = match self.target {
            Target::S0(i) => slot(&mut file.s0, i, "s0")?,
            Target::X0(i) => slot(&mut file.x0, i, "x0")?,
            Target::Eta(i) => slot(&mut file.eta, i, "eta")?,
            Target::Sigma(i, j) => cell(&mut file.sigma, i, j, "sigma")?,
            Target::Gamma(i, j) => cell(&mut file.gamma, i, j, "gamma")?,
        };
        *dst = value;
        Ok(())
    }
}

/// Monte Carlo settings for sweeps that record `mcpw`.
#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct McSettings {
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Optional fixed horizon; by default each grid point liquidates over
    /// its own closed-form optimum.
    #[serde(default)]
    pub horizon: Option<f64>,
}

fn default_reps() -> usize {
    1000
}
fn default_seed() -> u64 {
    42
}
fn default_steps() -> usize {
    100
}

impl Default for McSettings {
    fn default() -> Self {
        Self {
            reps: default_reps(),
            seed: default_seed(),
            steps: default_steps(),
            horizon: None,
        }
    }
}

/// One swept parameter: `count` values `start + k * step`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub path: String,
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

/// The on-disk sweep declaration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub base: ParamsFile,
    pub axes: Vec<AxisSpec>,
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub mc: McSettings,
}

pub fn load_sweep(path: &std::path::Path) -> Result<SweepFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// One grid point: its axis coordinates and the fully substituted params.
#[derive(Debug, Clone)]
pub struct Case {
    pub axis_values: Vec<f64>,
    pub file: ParamsFile,
}

/// A validated, enumerated grid ready to run.
#[derive(Debug, Clone)]
pub struct Grid {
    pub axis_names: Vec<String>,
    pub axis_counts: Vec<usize>,
    pub metrics: Vec<Metric>,
    pub mc: McSettings,
    pub cases: Vec<Case>,
}

/// One evaluated grid point.  Failed points keep their axis coordinates,
/// carry `NaN` for every metric from the failure onward, and record the
/// error text.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_values: Vec<f64>,
    pub values: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axis_names: Vec<String>,
    pub axis_counts: Vec<usize>,
    pub metric_names: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
}

impl SweepFile {
    /// Expands the declaration into a row-major grid (first axis slowest).
    pub fn grid(&self) -> Result<Grid> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Validation(format!(
                "a sweep needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        let mut paths = Vec::new();
        for axis in &self.axes {
            if axis.count < 1 {
                return Err(Error::Validation(format!(
                    "axis `{}` must have count >= 1",
                    axis.path
                )));
            }
            if !axis.start.is_finite() || !axis.step.is_finite() {
                return Err(Error::Validation(format!(
                    "axis `{}` has a non-finite start or step",
                    axis.path
                )));
            }
            paths.push(ParamPath::parse(&axis.path)?);
        }
        // Surface unaddressable paths immediately rather than per-row.
        for path in &paths {
            let mut probe = self.base.clone();
            let keep = match path.target {
                Target::S0(i) => probe.s0.get(i).copied(),
                Target::X0(i) => probe.x0.get(i).copied(),
                Target::Eta(i) => probe.eta.get(i).copied(),
                Target::Sigma(i, j) => probe.sigma.get(i).and_then(|r| r.get(j)).copied(),
                Target::Gamma(i, j) => probe.gamma.get(i).and_then(|r| r.get(j)).copied(),
            };
            match keep {
                Some(v) => path.apply(&mut probe, v)?,
                None => {
                    return Err(Error::Validation(format!(
                        "axis path `{}` does not address an existing entry",
                        path.column_name()
                    )))
                }
            }
        }

        let counts: Vec<usize> = self.axes.iter().map(|a| a.count).collect();
        let total: usize = counts.iter().product();
        let mut cases = Vec::with_capacity(total);
        let inner = if counts.len() == 2 { counts[1] } else { 1 };
        for idx in 0..total {
            let coords = if counts.len() == 2 {
                vec![idx / inner, idx % inner]
            } else {
                vec![idx]
            };
            let mut file = self.base.clone();
            let mut axis_values = Vec::with_capacity(coords.len());
            for (axis_i, &k) in coords.iter().enumerate() {
                let axis = &self.axes[axis_i];
                let value = axis.start + k as f64 * axis.step;
                paths[axis_i].apply(&mut file, value)?;
                axis_values.push(value);
            }
            cases.push(Case { axis_values, file });
        }
        Ok(Grid {
            axis_names: paths.iter().map(|p| p.column_name().to_string()).collect(),
            axis_counts: counts,
            metrics: self.metrics.clone(),
            mc: self.mc,
            cases,
        })
    }
}

fn evaluate_case(case: &Case, metrics: &[Metric], mc: &McSettings) -> SweepRow {
    let mut values = Vec::with_capacity(metrics.len());
    let mut error = None;
    match evaluate_metrics(case, metrics, mc, &mut values) {
        Ok(()) => {}
        Err(e) => {
            error = Some(e.to_string());
            while values.len() < metrics.len() {
                values.push(f64::NAN);
            }
        }
    }
    SweepRow {
        axis_values: case.axis_values.clone(),
        values,
        error,
    }
}

fn evaluate_metrics(
    case: &Case,
    metrics: &[Metric],
    mc: &McSettings,
    values: &mut Vec<f64>,
) -> Result<()> {
    let (params, risk) = case.file.build()?;
    // The Monte Carlo run is by far the dominant cost; do it lazily and at
    // most once per grid point.
    let mut summary = None;
    for metric in metrics {
        let value = match metric {
            Metric::TStar => optimizer::optimal_time_closed(&params, &risk)?.t_star,
            Metric::Mcpw => {
                if summary.is_none() {
                    let mut cfg = McConfig::new(mc.reps, mc.seed, mc.steps, risk);
                    if let Some(h) = mc.horizon {
                        cfg = cfg.with_horizon(h);
                    }
                    summary = Some(montecarlo::run_experiment(&params, &cfg)?);
                }
                summary.as_ref().unwrap().mean_cost_rate
            }
            Metric::RhoPaper => params.correlation_paper()?,
            Metric::RhoStandard => params.correlation_standard()?,
            Metric::Sigma12 => sigma_entry(&case.file, 0, 1)?,
            Metric::Absdiff => {
                (sigma_entry(&case.file, 0, 0)? - sigma_entry(&case.file, 0, 1)?).abs()
            }
        };
        values.push(value);
    }
    Ok(())
}

fn sigma_entry(file: &ParamsFile, i: usize, j: usize) -> Result<f64> {
    file.sigma
        .get(i)
        .and_then(|row| row.get(j))
        .copied()
        .ok_or_else(|| {
            Error::Validation(format!(
                "metric needs sigma[{}][{}], which this market does not have",
                i + 1,
                j + 1
            ))
        })
}

/// Evaluates every grid point.  Points run concurrently; the output order
/// is the grid's row-major order regardless of scheduling, so results are
/// deterministic.
pub fn run_grid(grid: &Grid) -> SweepResult {
    let rows: Vec<SweepRow> = grid
        .cases
        .par_iter()
        .map(|case| evaluate_case(case, &grid.metrics, &grid.mc))
        .collect();
    SweepResult {
        axis_names: grid.axis_names.clone(),
        axis_counts: grid.axis_counts.clone(),
        metric_names: grid.metrics.iter().map(|m| m.name()).collect(),
        rows,
    }
}

pub fn run_sweep(file: &SweepFile) -> Result<SweepResult> {
    Ok(run_grid(&file.grid()?))
}

/// Renders the result as CSV: axis columns then metric columns, full
/// double precision, `\n` line endings, failed metrics as `NaN`.
pub fn emit_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = result.axis_names.iter().map(|s| s.as_str()).collect();
    header.extend(result.metric_names.iter().copied());
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &result.rows {
        let mut fields: Vec<String> = row.axis_values.iter().map(|v| format!("{v}")).collect();
        fields.extend(row.values.iter().map(|v| format!("{v}")));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

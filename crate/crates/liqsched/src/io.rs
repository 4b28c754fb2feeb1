//! File formats: the params JSON, result JSON reports, and debug CSVs.

use std::path::Path;

use liqsched_core::cost::PathRealization;
use liqsched_core::montecarlo::{McSummary, Replication};
use liqsched_core::optimizer::OptimalHorizon;
use liqsched_core::{MarketParams, RiskLevel, Schedule};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk market description.
///
/// ```json
/// {
///   "s0":    [50.0, 100.0],
///   "x0":    [1e7, 8e6],
///   "sigma": [[0.08, 0.02], [0.1, 0.03]],
///   "gamma": [[3e-9, 1e-9], [2e-9, 5e-9]],
///   "eta":   [3e-8, 5e-8],
///   "p":     0.99
/// }
/// ```
///
/// `p` is optional and defaults to 0.99; every other field is required and
/// unknown keys are rejected so typos fail loudly.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub s0: Vec<f64>,
    pub x0: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub gamma: Vec<Vec<f64>>,
    pub eta: Vec<f64>,
    #[serde(default = "default_confidence")]
    pub p: f64,
}

fn default_confidence() -> f64 {
    0.99
}

impl ParamsFile {
    /// Validates into the core types.
    pub fn build(&self) -> Result<(MarketParams, RiskLevel)> {
        let params = MarketParams::new(
            self.s0.clone(),
            self.x0.clone(),
            self.sigma.clone(),
            self.gamma.clone(),
            self.eta.clone(),
        )?;
        let risk = RiskLevel::from_confidence(self.p)?;
        Ok((params, risk))
    }
}

pub fn load_params(path: &Path) -> Result<ParamsFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// `optimal-time` report.  `t_star` and `objective` always describe the
/// closed-form continuous optimum; the `tau`-dependent fields appear only
/// when a step length was requested and then describe the discrete
/// solution at that `tau`.
#[derive(Debug, Serialize)]
pub struct HorizonReport {
    pub t_star: f64,
    pub objective: f64,
    pub p: f64,
    pub z_p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_star: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_real: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_discrete: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective_discrete: Option<f64>,
}

impl HorizonReport {
    pub fn closed(opt: &OptimalHorizon, risk: &RiskLevel) -> Self {
        Self {
            t_star: opt.t_star,
            objective: opt.objective,
            p: risk.p(),
            z_p: risk.z_p(),
            tau: None,
            m_star: None,
            m_real: None,
            t_discrete: None,
            objective_discrete: None,
        }
    }

    pub fn with_discrete(mut self, opt: &OptimalHorizon, tau: f64) -> Self {
        self.tau = Some(tau);
        self.m_star = opt.m_star;
        self.m_real = opt.m_real;
        self.t_discrete = Some(opt.t_star);
        self.objective_discrete = Some(opt.objective);
        self
    }
}

/// `simulate` report: the summary plus the geometry it ran under.
#[derive(Debug, Serialize)]
pub struct SimulationReport {
    pub mean_cost: f64,
    pub std_cost: f64,
    pub per_asset_mean_costs: Vec<f64>,
    pub mean_cost_rate: f64,
    pub cost_rate: CostRateReport,
    pub horizon: f64,
    pub tau: f64,
    pub m_steps: usize,
    pub n_reps: usize,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct CostRateReport {
    pub min: f64,
    pub max: f64,
    pub std: f64,
}

impl From<&McSummary> for SimulationReport {
    fn from(s: &McSummary) -> Self {
        Self {
            mean_cost: s.mean_cost,
            std_cost: s.std_cost,
            per_asset_mean_costs: s.per_asset_mean_costs.clone(),
            mean_cost_rate: s.mean_cost_rate,
            cost_rate: CostRateReport {
                min: s.cost_rate_stats.min,
                max: s.cost_rate_stats.max,
                std: s.cost_rate_stats.std,
            },
            horizon: s.horizon,
            tau: s.tau,
            m_steps: s.m_steps,
            n_reps: s.n_reps,
            seed: s.seed,
        }
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Per-replication CSV: `rep,C,C1..CN,CPw`.
pub fn replications_csv(reps: &[Replication], n_assets: usize) -> String {
    let mut out = String::from("rep");
    out.push_str(",C");
    for i in 1..=n_assets {
        out.push_str(&format!(",C{i}"));
    }
    out.push_str(",CPw\n");
    for (r, rep) in reps.iter().enumerate() {
        out.push_str(&format!("{r},{}", rep.cost));
        for c in &rep.per_asset_costs {
            out.push_str(&format!(",{c}"));
        }
        out.push_str(&format!(",{}\n", rep.cost_rate));
    }
    out
}

/// Schedule CSV: `k,t,x1..xN` with `t = k * tau`.
pub fn schedule_csv(s: &Schedule) -> String {
    let n = s.num_assets();
    let mut out = String::from("k,t");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for (k, x) in s.positions().iter().enumerate() {
        out.push_str(&format!("{k},{}", k as f64 * s.tau()));
        for v in x {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

/// Path-debug CSV: `k,xi1..xiN,price1..priceN`, one row per trading step
/// (`k = 1..M`), prices being the execution prices `S~_k`.
pub fn path_csv(path: &PathRealization, n_assets: usize) -> String {
    let mut out = String::from("k");
    for i in 1..=n_assets {
        out.push_str(&format!(",xi{i}"));
    }
    for i in 1..=n_assets {
        out.push_str(&format!(",price{i}"));
    }
    out.push('\n');
    for (k, (noise, price)) in path.noise().iter().zip(path.exec_prices()).enumerate() {
        out.push_str(&format!("{}", k + 1));
        for v in noise {
            out.push_str(&format!(",{v}"));
        }
        for v in price {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

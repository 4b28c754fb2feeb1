//! Named experiment presets: fixed two-asset parameter grids, reproducible
//! with one command.
//!
//! All presets share the two-asset base market (prices 50/100, positions
//! 1e7/8e6, the usual volatility and impact blocks) and vary one or two
//! parameters over fixed arithmetic grids.  `fig3` expands to two runs,
//! one per asset; `fig4` and `fig5` share one coupled grid where the
//! volatility components of asset 1 trade off against each other at fixed
//! total volatility.

use crate::error::{Error, Result};
use crate::io::ParamsFile;
use crate::svg::SvgKind;
use crate::sweep::{AxisSpec, Case, Grid, McSettings, Metric, SweepFile};

/// A ready-to-run preset: its grid plus how to plot it.
#[derive(Debug, Clone)]
pub struct PresetRun {
    pub name: &'static str,
    pub description: &'static str,
    pub grid: Grid,
    pub svg_kind: SvgKind,
    pub svg_metric: Metric,
}

pub const PRESET_NAMES: [&str; 8] = [
    "fig1", "fig2", "fig3", "fig3a", "fig3b", "fig4", "fig5", "fig6",
];

fn base_file() -> ParamsFile {
    ParamsFile {
        s0: vec![50.0, 100.0],
        x0: vec![1.0e7, 8.0e6],
        sigma: vec![vec![0.08, 0.02], vec![0.1, 0.03]],
        gamma: vec![vec![3.0e-9, 1.0e-9], vec![2.0e-9, 5.0e-9]],
        eta: vec![3.0e-8, 5.0e-8],
        p: 0.99,
    }
}

fn axis(path: &str, start: f64, step: f64, count: usize) -> AxisSpec {
    AxisSpec {
        path: path.to_string(),
        start,
        step,
        count,
    }
}

fn grid_from_axes(
    axes: Vec<AxisSpec>,
    metrics: Vec<Metric>,
    seed: u64,
) -> Result<Grid> {
    SweepFile {
        base: base_file(),
        axes,
        metrics,
        mc: McSettings {
            seed,
            ..McSettings::default()
        },
    }
    .grid()
}

/// The coupled volatility-component grid behind fig4/fig5: asset 1's total
/// volatility is fixed at 0.5 while its components slide against each
/// other, and asset 2 is pinned at (0.01, 0.01).
fn coupled_volatility_grid(seed: u64) -> Grid {
    let mut cases = Vec::with_capacity(100);
    for j in 0..100 {
        let s11 = 0.04 + 0.004 * j as f64;
        let s12 = (0.25 - s11 * s11).sqrt();
        let mut file = base_file();
        file.sigma = vec![vec![s11, s12], vec![0.01, 0.01]];
        cases.push(Case {
            axis_values: vec![s11],
            file,
        });
    }
    Grid {
        axis_names: vec!["sigma11".to_string()],
        axis_counts: vec![100],
        metrics: vec![Metric::Sigma12, Metric::Absdiff, Metric::RhoPaper, Metric::TStar],
        mc: McSettings {
            seed,
            ..McSettings::default()
        },
        cases,
    }
}

/// Builds the runs behind one preset name (`fig3` maps to two runs).
pub fn build(name: &str, seed: u64) -> Result<Vec<PresetRun>> {
    let runs = match name {
        "fig1" => vec![PresetRun {
            name: "fig1",
            description: "optimal horizon and mean cost rate over the temporary-impact grid",
            grid: grid_from_axes(
                vec![axis("eta.1", 3.0e-8, 3.0e-9, 11), axis("eta.2", 5.0e-8, 5.0e-9, 11)],
                vec![Metric::TStar, Metric::Mcpw],
                seed,
            )?,
            svg_kind: SvgKind::Surface,
            svg_metric: Metric::TStar,
        }],
        "fig2" => vec![PresetRun {
            name: "fig2",
            description: "optimal horizon over asset 1's volatility components",
            grid: grid_from_axes(
                vec![
                    axis("sigma.1.1", 0.08, 0.008, 11),
                    axis("sigma.1.2", 0.02, 0.002, 11),
                ],
                vec![Metric::TStar],
                seed,
            )?,
            svg_kind: SvgKind::Surface,
            svg_metric: Metric::TStar,
        }],
        "fig3" => {
            let mut runs = build("fig3a", seed)?;
            runs.extend(build("fig3b", seed)?);
            runs
        }
        "fig3a" => vec![PresetRun {
            name: "fig3a",
            description: "correlation over asset 1's volatility components",
            grid: grid_from_axes(
                vec![
                    axis("sigma.1.1", 0.08, 0.008, 11),
                    axis("sigma.1.2", 0.02, 0.002, 11),
                ],
                vec![Metric::RhoPaper, Metric::TStar],
                seed,
            )?,
            svg_kind: SvgKind::Surface,
            svg_metric: Metric::RhoPaper,
        }],
        "fig3b" => vec![PresetRun {
            name: "fig3b",
            description: "correlation over asset 2's volatility components (grid spacing \
                          chosen so the corners land on 0.38 and 0.71)",
            grid: grid_from_axes(
                vec![
                    axis("sigma.2.1", 0.1, 0.01, 11),
                    axis("sigma.2.2", 0.03, 0.003, 11),
                ],
                vec![Metric::RhoPaper, Metric::TStar],
                seed,
            )?,
            svg_kind: SvgKind::Surface,
            svg_metric: Metric::RhoPaper,
        }],
        "fig4" => vec![PresetRun {
            name: "fig4",
            description: "correlation against the volatility-component gap at fixed total \
                          volatility 0.5 (the coupling s11^2 + s12^2 = 0.25 pins it)",
            grid: coupled_volatility_grid(seed),
            svg_kind: SvgKind::Line,
            svg_metric: Metric::RhoPaper,
        }],
        "fig5" => vec![PresetRun {
            name: "fig5",
            description: "optimal horizon against correlation on the fixed-total-volatility \
                          grid shared with fig4",
            grid: coupled_volatility_grid(seed),
            svg_kind: SvgKind::Line,
            svg_metric: Metric::TStar,
        }],
        "fig6" => vec![PresetRun {
            name: "fig6",
            description: "optimal horizon and mean cost rate over the external \
                          permanent-impact grid",
            grid: grid_from_axes(
                vec![
                    axis("gamma.1.2", 1.0e-9, 1.0e-10, 11),
                    axis("gamma.2.1", 2.0e-9, 2.0e-10, 11),
                ],
                vec![Metric::TStar, Metric::Mcpw],
                seed,
            )?,
            svg_kind: SvgKind::Surface,
            svg_metric: Metric::Mcpw,
        }],
        other => {
            return Err(Error::Validation(format!(
                "unknown preset `{other}` (known: {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(runs)
}

//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use liqsched_core::montecarlo::{self, McConfig};
use liqsched_core::optimizer;
use liqsched_core::{cost, RiskLevel, Schedule};

use crate::error::{Error, Result};
use crate::io::{self, ParamsFile};
use crate::svg::{self, SvgKind};
use crate::{presets, sweep};

#[derive(Debug, Parser)]
#[command(
    name = "liqsched",
    version,
    about = "Optimal liquidation horizons, schedules, and cost experiments \
             under linear price impact"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form optimal horizon; with --tau, also the discrete step count
    OptimalTime {
        /// Market parameters JSON
        params: PathBuf,
        /// Confidence level override (default: the file's `p`, else 0.99)
        #[arg(long)]
        p: Option<f64>,
        /// Step length; solves the discrete first-order condition at this tau
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Seeded Monte Carlo cost experiment on the linear schedule
    Simulate {
        /// Market parameters JSON
        params: PathBuf,
        /// Replication count
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// Master seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Discretization steps M
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Confidence level override
        #[arg(long)]
        p: Option<f64>,
        /// Fixed horizon (default: the closed-form optimum)
        #[arg(long)]
        horizon: Option<f64>,
        /// Also write the summary JSON here
        #[arg(long)]
        out_json: Option<PathBuf>,
        /// Also write a per-replication CSV here (rep, C, C1..CN, CPw)
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Linear liquidation schedule as CSV (k, t, x1..xN)
    Schedule {
        /// Market parameters JSON
        params: PathBuf,
        /// Number of steps M
        #[arg(long)]
        steps: usize,
        /// Step length (default: closed-form T* / M)
        #[arg(long)]
        tau: Option<f64>,
        /// Confidence level override (used only to derive the default tau)
        #[arg(long)]
        p: Option<f64>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One simulated path as CSV (k, xi1..xiN, price1..priceN), for debugging
    Path {
        /// Market parameters JSON
        params: PathBuf,
        /// Number of steps M
        #[arg(long)]
        steps: usize,
        /// Master seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Replication index within the seed's experiment
        #[arg(long, default_value_t = 0)]
        rep: u64,
        /// Step length (default: closed-form T* / M)
        #[arg(long)]
        tau: Option<f64>,
        /// Confidence level override (used only to derive the default tau)
        #[arg(long)]
        p: Option<f64>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep from a spec JSON
    Sweep {
        /// Sweep spec JSON
        spec: PathBuf,
        /// CSV output path
        #[arg(long)]
        out_csv: PathBuf,
        /// Optional SVG output path (line for 1 axis, heatmap for 2)
        #[arg(long)]
        out_svg: Option<PathBuf>,
        /// Metric to plot (default: the spec's first metric)
        #[arg(long)]
        svg_metric: Option<String>,
    },
    /// Reproduce the built-in experiment grids (fig1..fig6)
    Figures {
        /// Preset names; `fig3` expands to fig3a and fig3b
        #[arg(required = true)]
        names: Vec<String>,
        /// Master seed for the Monte Carlo metrics
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output directory
        #[arg(long, env = "LIQSCHED_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Parses argv, runs, and reports: 0 on success, 2 for validation errors,
/// 3 for numerical degeneracies, 1 for I/O failures.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn risk_for(file: &ParamsFile, flag: Option<f64>) -> Result<RiskLevel> {
    Ok(RiskLevel::from_confidence(flag.unwrap_or(file.p))?)
}

fn write_or_print(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// The step length to use when the user did not fix one: the closed-form
/// optimal horizon split into `steps` intervals.
fn default_tau(
    params: &liqsched_core::MarketParams,
    risk: &RiskLevel,
    steps: usize,
) -> Result<f64> {
    if steps < 1 {
        return Err(liqsched_core::Error::InvalidStepCount.into());
    }
    let t_star = optimizer::optimal_time_closed(params, risk)?.t_star;
    Ok(t_star / steps as f64)
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::OptimalTime { params, p, tau } => {
            let file = io::load_params(&params)?;
            let (market, _) = file.build()?;
            let risk = risk_for(&file, p)?;
            let closed = optimizer::optimal_time_closed(&market, &risk)?;
            let mut report = io::HorizonReport::closed(&closed, &risk);
            if let Some(tau) = tau {
                let discrete = optimizer::optimal_steps_discrete(&market, tau, &risk)?;
                report = report.with_discrete(&discrete, tau);
            }
            print!("{}", io::to_json_line(&report)?);
            Ok(())
        }
        Command::Simulate {
            params,
            reps,
            seed,
            steps,
            p,
            horizon,
            out_json,
            out_csv,
        } => {
            let file = io::load_params(&params)?;
            let (market, _) = file.build()?;
            let risk = risk_for(&file, p)?;
            let mut cfg = McConfig::new(reps, seed, steps, risk);
            if let Some(h) = horizon {
                cfg = cfg.with_horizon(h);
            }
            let summary = montecarlo::run_experiment(&market, &cfg)?;
            let report = io::SimulationReport::from(&summary);
            let text = io::to_json_line(&report)?;
            print!("{text}");
            if let Some(path) = out_json {
                io::write_text(&path, &text)?;
            }
            if let Some(path) = out_csv {
                let schedule = montecarlo::experiment_schedule(&market, &cfg)?;
                let replications = (0..reps)
                    .map(|r| montecarlo::run_replication(&market, &schedule, seed, r as u64))
                    .collect::<liqsched_core::Result<Vec<_>>>()?;
                io::write_text(
                    &path,
                    &io::replications_csv(&replications, market.num_assets()),
                )?;
            }
            Ok(())
        }
        Command::Schedule {
            params,
            steps,
            tau,
            p,
            out,
        } => {
            let file = io::load_params(&params)?;
            let (market, _) = file.build()?;
            let risk = risk_for(&file, p)?;
            let tau = match tau {
                Some(t) => t,
                None => default_tau(&market, &risk, steps)?,
            };
            let schedule = Schedule::linear(market.x0(), steps, tau)?;
            write_or_print(out.as_deref(), &io::schedule_csv(&schedule))
        }
        Command::Path {
            params,
            steps,
            seed,
            rep,
            tau,
            p,
            out,
        } => {
            let file = io::load_params(&params)?;
            let (market, _) = file.build()?;
            let risk = risk_for(&file, p)?;
            let tau = match tau {
                Some(t) => t,
                None => default_tau(&market, &risk, steps)?,
            };
            let schedule = Schedule::linear(market.x0(), steps, tau)?;
            let noise = montecarlo::noise_stream(seed, rep, steps, market.num_assets());
            let path = cost::simulate_path(&market, &schedule, noise)?;
            write_or_print(out.as_deref(), &io::path_csv(&path, market.num_assets()))
        }
        Command::Sweep {
            spec,
            out_csv,
            out_svg,
            svg_metric,
        } => {
            let file = sweep::load_sweep(&spec)?;
            let result = sweep::run_sweep(&file)?;
            io::write_text(&out_csv, &sweep::emit_csv(&result))?;
            if let Some(path) = out_svg {
                let metric = match &svg_metric {
                    Some(name) => name.clone(),
                    None => result
                        .metric_names
                        .first()
                        .map(|s| s.to_string())
                        .ok_or_else(|| {
                            Error::Validation("sweep has no metrics to plot".to_string())
                        })?,
                };
                let kind = SvgKind::for_result(&result);
                io::write_text(&path, &svg::render_svg(&result, kind, &metric)?)?;
            }
            Ok(())
        }
        Command::Figures {
            names,
            seed,
            out_dir,
        } => {
            std::fs::create_dir_all(&out_dir)
                .map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
            for name in &names {
                for run in presets::build(name, seed)? {
                    let result = sweep::run_grid(&run.grid);
                    let csv_path = out_dir.join(format!("{}.csv", run.name));
                    io::write_text(&csv_path, &sweep::emit_csv(&result))?;
                    let svg_path = out_dir.join(format!("{}.svg", run.name));
                    let rendered =
                        svg::render_svg(&result, run.svg_kind, run.svg_metric.name())?;
                    io::write_text(&svg_path, &rendered)?;
                    println!("wrote {}", csv_path.display());
                    println!("wrote {}", svg_path.display());
                }
            }
            Ok(())
        }
    }
}

//! Time-stepped crank-slider runs under a trapezoidal plan, ρ sweeps and
//! their CSV output.

mod config;
mod csv_io;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{ExperimentConfig, KEYS as CONFIG_KEYS};
pub use csv_io::{emit_csv, format_value, read_csv, write_csv_to, CsvRow};

use crate::coupling::{reflected_inertia_for, CurvePoint};
use crate::dynamics::{allocate, torques_for};
use crate::error::{Error, Result};
use crate::gear_train::GearReductions;
use crate::mechanism::{effective_inertia, joint_from_slider};
use crate::trajectory::joint_state_for;

/// One time sample of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SimulationRecord {
    pub t: f64,
    pub x: f64,
    pub x_dot: f64,
    pub x_ddot: f64,
    pub theta: f64,
    pub theta_dot: f64,
    pub theta_ddot: f64,
    /// I*(θ), kg·m².
    pub i_joint: f64,
    pub mu: f64,
    pub phi_v_ddot: f64,
    pub phi_f_ddot: f64,
    pub tau_v_inertial: f64,
    pub tau_f_inertial: f64,
    pub coupling_on_v: f64,
    pub coupling_on_f: f64,
}

impl CsvRow for SimulationRecord {
    const HEADER: &'static [&'static str] = &[
        "t",
        "x",
        "x_dot",
        "x_ddot",
        "theta",
        "theta_dot",
        "theta_ddot",
        "i_joint",
        "mu",
        "phi_v_ddot",
        "phi_f_ddot",
        "tau_v_inertial",
        "tau_f_inertial",
        "coupling_on_v",
        "coupling_on_f",
    ];

    fn fields(&self) -> Vec<f64> {
        vec![
            self.t,
            self.x,
            self.x_dot,
            self.x_ddot,
            self.theta,
            self.theta_dot,
            self.theta_ddot,
            self.i_joint,
            self.mu,
            self.phi_v_ddot,
            self.phi_f_ddot,
            self.tau_v_inertial,
            self.tau_f_inertial,
            self.coupling_on_v,
            self.coupling_on_f,
        ]
    }

    fn from_fields(v: &[f64]) -> Self {
        Self {
            t: v[0],
            x: v[1],
            x_dot: v[2],
            x_ddot: v[3],
            theta: v[4],
            theta_dot: v[5],
            theta_ddot: v[6],
            i_joint: v[7],
            mu: v[8],
            phi_v_ddot: v[9],
            phi_f_ddot: v[10],
            tau_v_inertial: v[11],
            tau_f_inertial: v[12],
            coupling_on_v: v[13],
            coupling_on_f: v[14],
        }
    }
}

impl CsvRow for CurvePoint {
    const HEADER: &'static [&'static str] = &["rho", "mu", "dmu_drho"];

    fn fields(&self) -> Vec<f64> {
        vec![self.rho, self.mu, self.dmu_drho]
    }

    fn from_fields(v: &[f64]) -> Self {
        Self {
            rho: v[0],
            mu: v[1],
            dmu_drho: v[2],
        }
    }
}

/// Sample times `k·T/N`, `k = 0..=N`, with `N = ⌈T·rate⌉`. A zero-length
/// plan gives the single instant 0.
pub fn sample_times(duration: f64, rate_hz: f64) -> Vec<f64> {
    if duration <= 0.0 {
        return vec![0.0];
    }
    // Shave a little off so T·rate that lands a hair above an integer does
    // not add a step.
    let steps = ((duration * rate_hz) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let dt = duration / steps as f64;
    (0..=steps)
        .map(|k| if k == steps { duration } else { k as f64 * dt })
        .collect()
}

/// Drive the crank-slider through the configured plan with the PFVA at
/// relative scale factor `rho`.
pub fn run_simulation(cfg: &ExperimentConfig, rho: f64) -> Result<Vec<SimulationRecord>> {
    cfg.validate()?;
    let gears = GearReductions::from_rho(rho)?;
    let profile = cfg.profile()?;
    let geom = &cfg.geometry;
    joint_from_slider(geom, cfg.x0)?;
    joint_from_slider(geom, cfg.xf)?;

    sample_times(profile.duration(), cfg.sample_rate_hz)
        .into_iter()
        .map(|t| {
            let s = profile.sample(t);
            let joint = joint_state_for(geom, &s)?;
            let i_joint = effective_inertia(geom, &cfg.masses, joint.theta);
            let inertia = reflected_inertia_for(&gears, i_joint, &cfg.motors)?;
            let motion = allocate(&joint, &gears, cfg.policy)?;
            let torques = torques_for(&inertia, &motion);
            Ok(SimulationRecord {
                t,
                x: s.x,
                x_dot: s.x_dot,
                x_ddot: s.x_ddot,
                theta: joint.theta,
                theta_dot: joint.theta_dot,
                theta_ddot: joint.theta_ddot,
                i_joint,
                mu: inertia.mu(),
                phi_v_ddot: motion.phi_v_ddot,
                phi_f_ddot: motion.phi_f_ddot,
                tau_v_inertial: torques.tau_v_inertial,
                tau_f_inertial: torques.tau_f_inertial,
                coupling_on_v: torques.coupling_on_v,
                coupling_on_f: torques.coupling_on_f,
            })
        })
        .collect()
}

/// Per-run statistics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub rho: f64,
    /// Largest |coupling torque| on either input, N·m.
    pub peak_abs_coupling: f64,
    pub peak_mu: f64,
    pub mean_mu: f64,
    pub peak_abs_tau_v: f64,
    pub peak_abs_tau_f: f64,
}

impl SweepRow {
    pub fn from_records(rho: f64, records: &[SimulationRecord]) -> Self {
        let peak = |f: fn(&SimulationRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
        let mean_mu = if records.is_empty() {
            0.0
        } else {
            records.iter().map(|r| r.mu).sum::<f64>() / records.len() as f64
        };
        Self {
            rho,
            peak_abs_coupling: peak(|r| r.coupling_on_v.abs().max(r.coupling_on_f.abs())),
            // Signed: μ is negative for ρ in (-1, 0) and below -1.
            peak_mu: if records.is_empty() {
                0.0
            } else {
                records
                    .iter()
                    .map(|r| r.mu)
                    .fold(f64::NEG_INFINITY, f64::max)
            },
            mean_mu,
            peak_abs_tau_v: peak(|r| r.tau_v_inertial.abs()),
            peak_abs_tau_f: peak(|r| r.tau_f_inertial.abs()),
        }
    }
}

impl CsvRow for SweepRow {
    const HEADER: &'static [&'static str] = &[
        "rho",
        "peak_abs_coupling_torque",
        "peak_mu",
        "mean_mu",
        "peak_abs_tau_v_inertial",
        "peak_abs_tau_f_inertial",
    ];

    fn fields(&self) -> Vec<f64> {
        vec![
            self.rho,
            self.peak_abs_coupling,
            self.peak_mu,
            self.mean_mu,
            self.peak_abs_tau_v,
            self.peak_abs_tau_f,
        ]
    }

    fn from_fields(v: &[f64]) -> Self {
        Self {
            rho: v[0],
            peak_abs_coupling: v[1],
            peak_mu: v[2],
            mean_mu: v[3],
            peak_abs_tau_v: v[4],
            peak_abs_tau_f: v[5],
        }
    }
}

/// One row per swept ρ, in the order given.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
}

/// A finished sweep: the summary plus every run's records.
#[derive(Clone, Debug)]
pub struct SweepRuns {
    pub summary: SweepSummary,
    pub runs: Vec<(f64, Vec<SimulationRecord>)>,
}

/// Runs are independent and execute in parallel; results keep the order of
/// `rhos`.
pub fn sweep_runs(cfg: &ExperimentConfig, rhos: &[f64]) -> Result<SweepRuns> {
    if rhos.is_empty() {
        return Err(Error::invalid("rhos", "sweep list is empty"));
    }
    let runs = rhos
        .par_iter()
        .map(|&rho| {
            run_simulation(cfg, rho)
                .map(|r| (rho, r))
                .map_err(|e| Error::Sweep {
                    rho,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = runs
        .iter()
        .map(|(rho, recs)| SweepRow::from_records(*rho, recs))
        .collect();
    Ok(SweepRuns {
        summary: SweepSummary { rows },
        runs,
    })
}

pub fn sweep_rho(cfg: &ExperimentConfig, rhos: &[f64]) -> Result<SweepSummary> {
    sweep_runs(cfg, rhos).map(|s| s.summary)
}

/// File name for one sweep member's records, e.g. `run_rho_5.csv`.
pub fn run_file_name(rho: f64) -> String {
    format!("run_rho_{rho}.csv")
}

/// Write each run to `dir/run_rho_<ρ>.csv`; returns the paths in sweep order.
pub fn emit_runs(runs: &SweepRuns, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    runs.runs
        .iter()
        .map(|(rho, recs)| {
            let path = dir.join(run_file_name(*rho));
            emit_csv(recs, &path)?;
            Ok(path)
        })
        .collect()
}

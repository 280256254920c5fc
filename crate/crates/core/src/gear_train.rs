//! Velocity summation, torque split and power balance of a dual-input,
//! single-output epicyclic gear train.
//!
//! The velocity input drives the carrier, the force input drives the sun and
//! the ring is the output:
//!
//! ```text
//! ω_o = R_v·ω_v + R_f·ω_f        τ_v = R_v·τ_o,  τ_f = R_f·τ_o
//! R_v + R_f = 1                  ρ = R_f / R_v
//! ```

use crate::error::{Error, Result};

/// Distance from ρ = 1 inside which [`GearWarning::UnitRatio`] is raised.
pub const UNIT_RATIO_WARNING_BAND: f64 = 1e-9;

/// Advisory attached to reductions that are valid but physically suspect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GearWarning {
    /// ρ ≈ 1: both inputs see the same reduction and the train turns as one
    /// body, i.e. it degenerates to a unit-ratio single-input drive.
    UnitRatio,
}

/// The pair of gear reductions of the two inputs, with `r_v + r_f == 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GearReductions {
    r_v: f64,
    r_f: f64,
    rho: f64,
    warning: Option<GearWarning>,
}

impl GearReductions {
    /// Reductions for relative scale factor `rho`:
    /// `R_v = 1/(ρ+1)`, `R_f = ρ/(ρ+1)`.
    pub fn from_rho(rho: f64) -> Result<Self> {
        if !rho.is_finite() {
            return Err(Error::invalid("rho", format!("must be finite, got {rho}")));
        }
        let denom = rho + 1.0;
        if denom == 0.0 {
            return Err(Error::SingularRatio { rho });
        }
        let (r_v, r_f) = split(1.0 / denom);
        let warning =
            ((rho - 1.0).abs() < UNIT_RATIO_WARNING_BAND).then_some(GearWarning::UnitRatio);
        Ok(Self {
            r_v,
            r_f,
            rho,
            warning,
        })
    }

    /// Reductions given the velocity-side reduction directly; `R_f = 1 - R_v`.
    ///
    /// `r_v = 0` is accepted (pure force path) and yields `rho = ±inf`.
    pub fn from_velocity_reduction(r_v: f64) -> Result<Self> {
        if !r_v.is_finite() {
            return Err(Error::invalid("r_v", format!("must be finite, got {r_v}")));
        }
        let (r_v, r_f) = split(r_v);
        let rho = r_f / r_v;
        if rho.is_nan() {
            return Err(Error::invalid("r_v", "reductions give an undefined rho"));
        }
        let warning =
            ((rho - 1.0).abs() < UNIT_RATIO_WARNING_BAND).then_some(GearWarning::UnitRatio);
        Ok(Self {
            r_v,
            r_f,
            rho,
            warning,
        })
    }

    pub fn r_v(&self) -> f64 {
        self.r_v
    }

    pub fn r_f(&self) -> f64 {
        self.r_f
    }

    /// The relative scale factor this value was built for.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// ρ recomputed from the stored reductions.
    pub fn rho_of(&self) -> f64 {
        self.r_f / self.r_v
    }

    pub fn warning(&self) -> Option<GearWarning> {
        self.warning
    }

    /// The 1×2 row of velocity ratios `[R_v, R_f]` mapping input rates to the
    /// output rate.
    pub fn velocity_ratios(&self) -> [f64; 2] {
        [self.r_v, self.r_f]
    }
}

/// `(r_v, r_f)` near `(approx_r_v, 1 - approx_r_v)` with `r_v + r_f == 1.0`
/// in floating point.
fn split(approx_r_v: f64) -> (f64, f64) {
    let r_f = 1.0 - approx_r_v;
    if approx_r_v >= 0.0 {
        (approx_r_v, r_f)
    } else {
        // Negative r_v puts r_f above 1, where 1 - r_f is exact.
        (1.0 - r_f, r_f)
    }
}

/// Shorthand for [`GearReductions::from_rho`].
pub fn reductions_from_rho(rho: f64) -> Result<GearReductions> {
    GearReductions::from_rho(rho)
}

/// Output speed as the weighted sum of the two input speeds.
pub fn output_velocity(omega_v: f64, omega_f: f64, g: &GearReductions) -> f64 {
    g.r_v * omega_v + g.r_f * omega_f
}

/// Input torques `(τ_v, τ_f)` balancing an output torque `tau_o`.
pub fn input_torques(tau_o: f64, g: &GearReductions) -> (f64, f64) {
    (g.r_v * tau_o, g.r_f * tau_o)
}

/// Speeds and torques at the three shafts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PfvaState {
    pub omega_v: f64,
    pub omega_f: f64,
    pub omega_o: f64,
    pub tau_v: f64,
    pub tau_f: f64,
    pub tau_o: f64,
}

impl PfvaState {
    /// State consistent with the lossless train: output speed from the
    /// velocity map, input torques from the torque map.
    pub fn from_inputs(omega_v: f64, omega_f: f64, tau_o: f64, g: &GearReductions) -> Self {
        let (tau_v, tau_f) = input_torques(tau_o, g);
        Self {
            omega_v,
            omega_f,
            omega_o: output_velocity(omega_v, omega_f, g),
            tau_v,
            tau_f,
            tau_o,
        }
    }
}

/// Output power minus input power; zero for a lossless, consistent state.
pub fn power_residual(s: &PfvaState) -> f64 {
    s.tau_o * s.omega_o - s.tau_v * s.omega_v - s.tau_f * s.omega_f
}

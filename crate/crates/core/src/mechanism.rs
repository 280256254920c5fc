//! Crank-slider kinematics and its single-link-equivalent inertia.
//!
//! Crank of length `r` pivots at the origin, coupler of length `l` joins the
//! crank pin to a slider on the x axis. The slider position and its first and
//! second kinematic influence coefficients are
//!
//! ```text
//! x(θ) = r·cosθ + √(l² − r²·sin²θ)
//! G(θ) = dx/dθ,  H(θ) = d²x/dθ²
//! ```
//!
//! The working branch is θ ∈ [0, π], where `x` falls monotonically from
//! `l + r` to `l − r`.

use std::f64::consts::PI;

use crate::error::{check_inertia, Error, Result};

/// Link lengths in metres; requires `0 < crank_r < coupler_l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrankSliderGeometry {
    crank_r: f64,
    coupler_l: f64,
}

impl Default for CrankSliderGeometry {
    fn default() -> Self {
        Self {
            crank_r: 0.15,
            coupler_l: 0.45,
        }
    }
}

impl CrankSliderGeometry {
    pub fn new(crank_r: f64, coupler_l: f64) -> Result<Self> {
        if !(crank_r.is_finite() && coupler_l.is_finite()) || crank_r <= 0.0 || crank_r >= coupler_l
        {
            return Err(Error::invalid(
                "geometry",
                format!("need 0 < crank_r < coupler_l, got r = {crank_r}, l = {coupler_l}"),
            ));
        }
        Ok(Self { crank_r, coupler_l })
    }

    pub fn crank_r(&self) -> f64 {
        self.crank_r
    }

    pub fn coupler_l(&self) -> f64 {
        self.coupler_l
    }

    /// `(l − r, l + r)`.
    pub fn stroke(&self) -> (f64, f64) {
        (self.coupler_l - self.crank_r, self.coupler_l + self.crank_r)
    }

    // √(l² − r²·sin²θ): horizontal reach of the coupler.
    fn reach(&self, sin: f64) -> f64 {
        let (r, l) = (self.crank_r, self.coupler_l);
        (l * l - r * r * sin * sin).sqrt()
    }
}

/// Inertial parameters of the links.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MechanismMasses {
    /// Crank inertia about its pivot, kg·m².
    pub i_crank: f64,
    /// Coupler mass, kg; lumped half at each pin.
    pub m_coupler: f64,
    pub m_slider: f64,
}

impl Default for MechanismMasses {
    fn default() -> Self {
        Self {
            i_crank: 0.01,
            m_coupler: 0.5,
            m_slider: 1.0,
        }
    }
}

impl MechanismMasses {
    pub fn validate(&self) -> Result<()> {
        check_inertia("i_crank", self.i_crank)?;
        check_inertia("m_coupler", self.m_coupler)?;
        check_inertia("m_slider", self.m_slider)
    }
}

/// Crank angle and its rates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JointState {
    pub theta: f64,
    pub theta_dot: f64,
    pub theta_ddot: f64,
}

pub fn slider_position(g: &CrankSliderGeometry, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    g.crank_r * c + g.reach(s)
}

/// First-order KIC dx/dθ (m/rad).
pub fn kic_first(g: &CrankSliderGeometry, theta: f64) -> f64 {
    let r = g.crank_r;
    let (s, c) = theta.sin_cos();
    -r * s - r * r * s * c / g.reach(s)
}

/// Second-order KIC d²x/dθ² (m/rad²).
pub fn kic_second(g: &CrankSliderGeometry, theta: f64) -> f64 {
    let r = g.crank_r;
    let (s, c) = theta.sin_cos();
    let d = g.reach(s);
    let r2 = r * r;
    -r * c - r2 * (c * c - s * s) / d - r2 * r2 * s * s * c * c / (d * d * d)
}

/// Crank angle in [0, π] placing the slider at `x`.
pub fn joint_from_slider(g: &CrankSliderGeometry, x: f64) -> Result<f64> {
    let (min, max) = g.stroke();
    // Admit a few ulps of slop so stroke endpoints computed elsewhere still map.
    let slop = 4.0 * f64::EPSILON * max;
    if !x.is_finite() || x < min - slop || x > max + slop {
        return Err(Error::OutOfStroke { x, min, max });
    }
    if x >= max {
        return Ok(0.0);
    }
    if x <= min {
        return Ok(PI);
    }

    // x(θ) is strictly decreasing on [0, π]; bisect until the bracket stops
    // shrinking in floating point.
    let (mut lo, mut hi) = (0.0_f64, PI);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slider_position(g, mid) > x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let pick = if (slider_position(g, lo) - x).abs() <= (slider_position(g, hi) - x).abs() {
        lo
    } else {
        hi
    };
    Ok(pick)
}

/// Configuration-dependent inertia of the whole mechanism reflected to the
/// crank joint.
///
/// With the coupler split into point masses at the crank pin (speed `r·θ̇`)
/// and the slider pin (speed `G·θ̇`):
/// `I*(θ) = i_crank + (m_c/2)·r² + (m_c/2 + m_s)·G(θ)²`.
pub fn effective_inertia(g: &CrankSliderGeometry, m: &MechanismMasses, theta: f64) -> f64 {
    let half = 0.5 * m.m_coupler;
    let kic = kic_first(g, theta);
    m.i_crank + half * g.crank_r * g.crank_r + (half + m.m_slider) * kic * kic
}

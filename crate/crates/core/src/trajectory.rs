//! Trapezoidal slider motion plans and their pullback to crank motion.

use crate::error::{Error, Result};
use crate::mechanism::{joint_from_slider, kic_first, kic_second, CrankSliderGeometry, JointState};

/// |G| below this (m/rad) is treated as a dead-center configuration.
pub const DEAD_CENTER_KIC: f64 = 1e-9;

/// Constant-acceleration / constant-velocity / constant-deceleration move
/// from `x0` to `xf`. Falls back to a triangular profile when the distance is
/// too short to reach `v_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapezoidProfile {
    pub x0: f64,
    pub xf: f64,
    pub v_max: f64,
    pub a_max: f64,
    pub t_acc: f64,
    pub t_cruise: f64,
    pub t_dec: f64,
    /// +1 for increasing x, -1 for decreasing, 0 for no motion.
    pub direction: f64,
    /// Speed reached at the end of the ramp (≤ v_max).
    pub v_peak: f64,
}

/// Position, velocity and acceleration of the slider at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliderSample {
    pub x: f64,
    pub x_dot: f64,
    pub x_ddot: f64,
}

pub fn plan_trapezoid(x0: f64, xf: f64, v_max: f64, a_max: f64) -> Result<TrapezoidProfile> {
    if !(v_max > 0.0 && v_max.is_finite()) {
        return Err(Error::NonPositiveLimit {
            what: "v_max",
            value: v_max,
        });
    }
    if !(a_max > 0.0 && a_max.is_finite()) {
        return Err(Error::NonPositiveLimit {
            what: "a_max",
            value: a_max,
        });
    }
    if !(x0.is_finite() && xf.is_finite()) {
        return Err(Error::invalid("profile endpoints", "must be finite"));
    }

    let dist = (xf - x0).abs();
    let direction = if xf > x0 {
        1.0
    } else if xf < x0 {
        -1.0
    } else {
        0.0
    };
    let (t_acc, t_cruise, v_peak) = if dist == 0.0 {
        (0.0, 0.0, 0.0)
    } else if dist >= v_max * v_max / a_max {
        (v_max / a_max, dist / v_max - v_max / a_max, v_max)
    } else {
        let v_peak = (a_max * dist).sqrt();
        (v_peak / a_max, 0.0, v_peak)
    };

    Ok(TrapezoidProfile {
        x0,
        xf,
        v_max,
        a_max,
        t_acc,
        t_cruise: t_cruise.max(0.0),
        t_dec: t_acc,
        direction,
        v_peak,
    })
}

impl TrapezoidProfile {
    pub fn duration(&self) -> f64 {
        self.t_acc + self.t_cruise + self.t_dec
    }

    /// Slider state at `t`, clamped to `[0, T]`.
    pub fn sample(&self, t: f64) -> SliderSample {
        let total = self.duration();
        if self.direction == 0.0 || total == 0.0 {
            return SliderSample {
                x: self.x0,
                x_dot: 0.0,
                x_ddot: 0.0,
            };
        }
        let t = t.clamp(0.0, total);
        let sign = self.direction;
        let a = self.a_max;
        let ramp_dist = 0.5 * a * self.t_acc * self.t_acc;
        let cruise_end = self.t_acc + self.t_cruise;

        let (dist, speed, accel) = if t < self.t_acc {
            (0.5 * a * t * t, a * t, a)
        } else if t < cruise_end {
            (ramp_dist + self.v_peak * (t - self.t_acc), self.v_peak, 0.0)
        } else {
            // Measure the decel phase backwards from the end so x(T) = xf exactly.
            let remaining = total - t;
            let full = (self.xf - self.x0).abs();
            (full - 0.5 * a * remaining * remaining, a * remaining, -a)
        };
        SliderSample {
            x: self.x0 + sign * dist,
            x_dot: sign * speed,
            x_ddot: sign * accel,
        }
    }
}

pub fn sample(p: &TrapezoidProfile, t: f64) -> SliderSample {
    p.sample(t)
}

/// Crank motion realising the slider motion at `t`:
/// `θ̇ = ẋ/G`, `θ̈ = (ẍ − H·θ̇²)/G`.
pub fn joint_trajectory(
    p: &TrapezoidProfile,
    g: &CrankSliderGeometry,
    t: f64,
) -> Result<JointState> {
    joint_state_for(g, &p.sample(t))
}

/// Crank motion for a given slider state.
pub fn joint_state_for(g: &CrankSliderGeometry, s: &SliderSample) -> Result<JointState> {
    let theta = joint_from_slider(g, s.x)?;
    let kic = kic_first(g, theta);
    if kic.abs() < DEAD_CENTER_KIC {
        return Err(Error::DeadCenter { theta, kic });
    }
    let theta_dot = s.x_dot / kic;
    let theta_ddot = (s.x_ddot - kic_second(g, theta) * theta_dot * theta_dot) / kic;
    Ok(JointState {
        theta,
        theta_dot,
        theta_ddot,
    })
}

//! Splitting joint motion between the two inputs and the inertial torque
//! each input must supply.

use std::fmt;
use std::str::FromStr;

use crate::coupling::{
    limit_reflected_inertia, reflected_inertia, MotorInertias, ReflectedInertia2x2,
};
use crate::error::{Error, Result};
use crate::gear_train::GearReductions;
use crate::mechanism::JointState;

/// Input rates (rad/s) and accelerations (rad/s²).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct InputMotion {
    pub phi_v_dot: f64,
    pub phi_f_dot: f64,
    pub phi_v_ddot: f64,
    pub phi_f_ddot: f64,
}

/// How a joint rate is shared between the two inputs. The train has one
/// output and two inputs, so any split with `R_v·φ̇_v + R_f·φ̇_f = θ̇` works.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AllocationPolicy {
    /// Force input held still.
    #[default]
    VelocityOnly,
    /// Velocity input held still.
    ForceOnly,
    /// Least-squares split `gᵀθ̇ / (g·gᵀ)`.
    MinNorm,
}

impl AllocationPolicy {
    pub const ALL: [AllocationPolicy; 3] = [Self::VelocityOnly, Self::ForceOnly, Self::MinNorm];

    pub fn name(&self) -> &'static str {
        match self {
            Self::VelocityOnly => "velocity_only",
            Self::ForceOnly => "force_only",
            Self::MinNorm => "min_norm",
        }
    }
}

impl fmt::Display for AllocationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AllocationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::invalid(
                    "policy",
                    format!(
                        "unknown policy {s:?} (expected velocity_only, force_only or min_norm)"
                    ),
                )
            })
    }
}

/// Input motion producing `joint` through reductions `g`.
pub fn allocate(
    joint: &JointState,
    g: &GearReductions,
    policy: AllocationPolicy,
) -> Result<InputMotion> {
    let [r_v, r_f] = g.velocity_ratios();
    let (w_v, w_f) = match policy {
        AllocationPolicy::VelocityOnly => {
            if r_v == 0.0 {
                return Err(Error::DegeneratePolicy {
                    policy: policy.name(),
                    reduction: "velocity-side",
                });
            }
            (1.0 / r_v, 0.0)
        }
        AllocationPolicy::ForceOnly => {
            if r_f == 0.0 {
                return Err(Error::DegeneratePolicy {
                    policy: policy.name(),
                    reduction: "force-side",
                });
            }
            (0.0, 1.0 / r_f)
        }
        AllocationPolicy::MinNorm => {
            // r_v + r_f = 1 keeps the norm away from zero.
            let norm2 = r_v * r_v + r_f * r_f;
            (r_v / norm2, r_f / norm2)
        }
    };
    Ok(InputMotion {
        phi_v_dot: w_v * joint.theta_dot,
        phi_f_dot: w_f * joint.theta_dot,
        phi_v_ddot: w_v * joint.theta_ddot,
        phi_f_ddot: w_f * joint.theta_ddot,
    })
}

/// Inertial torque demand on each input, split into the diagonal part and
/// the part spent accelerating the other input through μ.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct InertialTorques {
    pub tau_v_inertial: f64,
    pub tau_f_inertial: f64,
    /// μ·φ̈_f, felt by the velocity input.
    pub coupling_on_v: f64,
    /// μ·φ̈_v, felt by the force input.
    pub coupling_on_f: f64,
}

/// `τ = M·φ̈` for an inertia matrix already evaluated.
pub fn torques_for(m: &ReflectedInertia2x2, motion: &InputMotion) -> InertialTorques {
    let coupling_on_v = m.a_vf * motion.phi_f_ddot;
    let coupling_on_f = m.a_fv * motion.phi_v_ddot;
    InertialTorques {
        tau_v_inertial: m.a_vv * motion.phi_v_ddot + coupling_on_v,
        tau_f_inertial: m.a_ff * motion.phi_f_ddot + coupling_on_f,
        coupling_on_v,
        coupling_on_f,
    }
}

/// Inverse dynamics with only inertial terms: `τ = I_φφ(ρ)·φ̈`.
pub fn inertial_torques(
    motion: &InputMotion,
    rho: f64,
    i_joint: f64,
    m: &MotorInertias,
) -> Result<InertialTorques> {
    Ok(torques_for(&reflected_inertia(rho, i_joint, m)?, motion))
}

/// [`inertial_torques`] in the ρ → ∞ limit.
pub fn limit_inertial_torques(
    motion: &InputMotion,
    i_joint: f64,
    m: &MotorInertias,
) -> Result<InertialTorques> {
    Ok(torques_for(&limit_reflected_inertia(i_joint, m)?, motion))
}

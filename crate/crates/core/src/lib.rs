//! Dynamic coupling between the two inputs of a parallel force/velocity
//! actuator: a dual-input epicyclic train whose ring drives a single-DOF
//! mechanism.
//!
//! * [`gear_train`]: velocity/torque maps and the relative scale factor ρ.
//! * [`coupling`]: input-space reflected inertia and the coupling term μ(ρ).
//! * [`mechanism`]: crank-slider kinematics and its joint-side inertia.
//! * [`trajectory`]: trapezoidal slider plans pulled back to the crank.
//! * [`dynamics`]: input motion allocation and inertial torque demands.
//! * [`harness`]: configuration, simulation runs, ρ sweeps and CSV output.

pub mod coupling;
pub mod dynamics;
pub mod error;
pub mod gear_train;
pub mod harness;
pub mod mechanism;
pub mod trajectory;

pub use coupling::{
    coupling_mu, coupling_sensitivity, limit_reflected_inertia, mu_curve, reflected_inertia,
    CurvePoint, MotorInertias, ReflectedInertia2x2, Spacing,
};
pub use dynamics::{
    allocate, inertial_torques, limit_inertial_torques, torques_for, AllocationPolicy,
    InertialTorques, InputMotion,
};
pub use error::{Error, Result};
pub use gear_train::{
    input_torques, output_velocity, power_residual, reductions_from_rho, GearReductions,
    GearWarning, PfvaState,
};
pub use harness::{
    emit_csv, read_csv, run_simulation, sweep_rho, sweep_runs, ExperimentConfig, SimulationRecord,
    SweepRow, SweepSummary,
};
pub use mechanism::{
    effective_inertia, joint_from_slider, kic_first, kic_second, slider_position,
    CrankSliderGeometry, JointState, MechanismMasses,
};
pub use trajectory::{joint_trajectory, plan_trapezoid, sample, TrapezoidProfile};

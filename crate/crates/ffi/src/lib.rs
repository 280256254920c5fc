//! C ABI over `pfva-core`.
//!
//! Every fallible call returns a [`PfvaStatus`] and writes results through
//! out-pointers. On failure the out-pointers are left untouched and
//! [`pfva_last_error`] describes the failure on the calling thread.
//! Configurations, runs and sweeps are opaque handles owned by the caller and
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use pfva_core::harness::{emit_csv, run_simulation, sweep_rho, SweepRow};
use pfva_core::{
    coupling_mu, coupling_sensitivity, input_torques, limit_reflected_inertia, output_velocity,
    reductions_from_rho, reflected_inertia, AllocationPolicy, Error, ExperimentConfig,
    MotorInertias, ReflectedInertia2x2, SimulationRecord,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfvaStatus {
    Ok = 0,
    NullPointer = 1,
    SingularRatio = 2,
    InvalidArgument = 3,
    OutOfStroke = 4,
    DeadCenter = 5,
    Config = 6,
    Io = 7,
    IndexOutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PfvaReductions {
    pub r_v: f64,
    pub r_f: f64,
    pub rho: f64,
    /// 1 when ρ is within 1e-9 of 1, where both inputs reduce equally.
    pub unit_ratio_warning: i32,
}

/// Row-major 2x2 input-space inertia, kg·m².
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PfvaMatrix2 {
    pub a_vv: f64,
    pub a_vf: f64,
    pub a_fv: f64,
    pub a_ff: f64,
}

/// One sample of a simulation run; same columns as the run CSV.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PfvaRecord {
    pub t: f64,
    pub x: f64,
    pub x_dot: f64,
    pub x_ddot: f64,
    pub theta: f64,
    pub theta_dot: f64,
    pub theta_ddot: f64,
    pub i_joint: f64,
    pub mu: f64,
    pub phi_v_ddot: f64,
    pub phi_f_ddot: f64,
    pub tau_v_inertial: f64,
    pub tau_f_inertial: f64,
    pub coupling_on_v: f64,
    pub coupling_on_f: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PfvaSweepRow {
    pub rho: f64,
    pub peak_abs_coupling_torque: f64,
    pub peak_mu: f64,
    pub mean_mu: f64,
    pub peak_abs_tau_v_inertial: f64,
    pub peak_abs_tau_f_inertial: f64,
}

/// Opaque experiment configuration.
pub struct PfvaConfig(ExperimentConfig);

/// Opaque simulation run.
pub struct PfvaRun(Vec<SimulationRecord>);

/// Opaque sweep summary.
pub struct PfvaSweep(Vec<SweepRow>);

enum Fail {
    Core(Error),
    Null(&'static str),
    Index { index: usize, len: usize },
    Utf8(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

impl Fail {
    fn status(&self) -> PfvaStatus {
        match self {
            Fail::Core(e) => match e.root() {
                Error::SingularRatio { .. } | Error::IntervalContainsSingularity { .. } => {
                    PfvaStatus::SingularRatio
                }
                Error::OutOfStroke { .. } => PfvaStatus::OutOfStroke,
                Error::DeadCenter { .. } => PfvaStatus::DeadCenter,
                Error::Config { .. } => PfvaStatus::Config,
                Error::Io { .. } | Error::Csv { .. } => PfvaStatus::Io,
                _ => PfvaStatus::InvalidArgument,
            },
            Fail::Null(_) => PfvaStatus::NullPointer,
            Fail::Index { .. } => PfvaStatus::IndexOutOfRange,
            Fail::Utf8(_) => PfvaStatus::InvalidArgument,
        }
    }

    fn message(&self) -> String {
        match self {
            Fail::Core(e) => e.to_string(),
            Fail::Null(what) => format!("{what} is a null pointer"),
            Fail::Index { index, len } => format!("index {index} out of range for length {len}"),
            Fail::Utf8(what) => format!("{what} is not valid UTF-8"),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    // Interior NULs cannot cross the C boundary.
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PfvaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            PfvaStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(fail.message());
            fail.status()
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PfvaStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn in_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8(what))
}

fn matrix(m: &ReflectedInertia2x2) -> PfvaMatrix2 {
    PfvaMatrix2 {
        a_vv: m.a_vv,
        a_vf: m.a_vf,
        a_fv: m.a_fv,
        a_ff: m.a_ff,
    }
}

impl From<&SimulationRecord> for PfvaRecord {
    fn from(r: &SimulationRecord) -> Self {
        PfvaRecord {
            t: r.t,
            x: r.x,
            x_dot: r.x_dot,
            x_ddot: r.x_ddot,
            theta: r.theta,
            theta_dot: r.theta_dot,
            theta_ddot: r.theta_ddot,
            i_joint: r.i_joint,
            mu: r.mu,
            phi_v_ddot: r.phi_v_ddot,
            phi_f_ddot: r.phi_f_ddot,
            tau_v_inertial: r.tau_v_inertial,
            tau_f_inertial: r.tau_f_inertial,
            coupling_on_v: r.coupling_on_v,
            coupling_on_f: r.coupling_on_f,
        }
    }
}

impl From<&SweepRow> for PfvaSweepRow {
    fn from(r: &SweepRow) -> Self {
        PfvaSweepRow {
            rho: r.rho,
            peak_abs_coupling_torque: r.peak_abs_coupling,
            peak_mu: r.peak_mu,
            mean_mu: r.mean_mu,
            peak_abs_tau_v_inertial: r.peak_abs_tau_v,
            peak_abs_tau_f_inertial: r.peak_abs_tau_f,
        }
    }
}

/// Message for the most recent failure on this thread, or NULL after a
/// successful call. Valid until the next `pfva_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pfva_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Static name of a status code, e.g. `"singular_ratio"`.
#[no_mangle]
pub extern "C" fn pfva_status_name(status: PfvaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PfvaStatus::Ok => c"ok",
        PfvaStatus::NullPointer => c"null_pointer",
        PfvaStatus::SingularRatio => c"singular_ratio",
        PfvaStatus::InvalidArgument => c"invalid_argument",
        PfvaStatus::OutOfStroke => c"out_of_stroke",
        PfvaStatus::DeadCenter => c"dead_center",
        PfvaStatus::Config => c"config",
        PfvaStatus::Io => c"io",
        PfvaStatus::IndexOutOfRange => c"index_out_of_range",
        PfvaStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// # Safety
/// `out` must be NULL or point to writable memory for one `PfvaReductions`.
#[no_mangle]
pub unsafe extern "C" fn pfva_reductions_from_rho(
    rho: f64,
    out: *mut PfvaReductions,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = reductions_from_rho(rho)?;
        *out = PfvaReductions {
            r_v: g.r_v(),
            r_f: g.r_f(),
            rho: g.rho(),
            unit_ratio_warning: i32::from(g.warning().is_some()),
        };
        Ok(())
    })
}

/// Output speed for the given input speeds.
///
/// # Safety
/// `out` must be NULL or point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn pfva_output_velocity(
    omega_v: f64,
    omega_f: f64,
    rho: f64,
    out: *mut f64,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = output_velocity(omega_v, omega_f, &reductions_from_rho(rho)?);
        Ok(())
    })
}

/// Input torques that balance an output torque.
///
/// # Safety
/// `tau_v` and `tau_f` must be NULL or point to writable `double`s.
#[no_mangle]
pub unsafe extern "C" fn pfva_input_torques(
    tau_o: f64,
    rho: f64,
    tau_v: *mut f64,
    tau_f: *mut f64,
) -> PfvaStatus {
    guard(|| {
        let tau_v = out_ref(tau_v, "tau_v")?;
        let tau_f = out_ref(tau_f, "tau_f")?;
        (*tau_v, *tau_f) = input_torques(tau_o, &reductions_from_rho(rho)?);
        Ok(())
    })
}

/// # Safety
/// `out` must be NULL or point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn pfva_coupling_mu(rho: f64, i_joint: f64, out: *mut f64) -> PfvaStatus {
    guard(|| {
        *out_ref(out, "out")? = coupling_mu(rho, i_joint)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be NULL or point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn pfva_coupling_sensitivity(
    rho: f64,
    i_joint: f64,
    out: *mut f64,
) -> PfvaStatus {
    guard(|| {
        *out_ref(out, "out")? = coupling_sensitivity(rho, i_joint)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be NULL or point to a writable `PfvaMatrix2`.
#[no_mangle]
pub unsafe extern "C" fn pfva_reflected_inertia(
    rho: f64,
    i_joint: f64,
    i_mv: f64,
    i_mf: f64,
    out: *mut PfvaMatrix2,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let m = reflected_inertia(rho, i_joint, &MotorInertias::new(i_mv, i_mf)?)?;
        *out = matrix(&m);
        Ok(())
    })
}

/// Reflected inertia as ρ grows without bound.
///
/// # Safety
/// `out` must be NULL or point to a writable `PfvaMatrix2`.
#[no_mangle]
pub unsafe extern "C" fn pfva_limit_reflected_inertia(
    i_joint: f64,
    i_mv: f64,
    i_mf: f64,
    out: *mut PfvaMatrix2,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = matrix(&limit_reflected_inertia(
            i_joint,
            &MotorInertias::new(i_mv, i_mf)?,
        )?);
        Ok(())
    })
}

/// Built-in default configuration.
///
/// # Safety
/// `out` must be NULL or point to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn pfva_config_default(out: *mut *mut PfvaConfig) -> PfvaStatus {
    guard(|| {
        *out_ref(out, "out")? = Box::into_raw(Box::new(PfvaConfig(ExperimentConfig::default())));
        Ok(())
    })
}

/// Parse `key = value` configuration text.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` as for
/// [`pfva_config_default`].
#[no_mangle]
pub unsafe extern "C" fn pfva_config_parse(
    text: *const c_char,
    out: *mut *mut PfvaConfig,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cfg = ExperimentConfig::parse(in_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(PfvaConfig(cfg)));
        Ok(())
    })
}

/// # Safety
/// `path` must be NULL or a NUL-terminated string; `out` as for
/// [`pfva_config_default`].
#[no_mangle]
pub unsafe extern "C" fn pfva_config_load(
    path: *const c_char,
    out: *mut *mut PfvaConfig,
) -> PfvaStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cfg = ExperimentConfig::load(in_str(path, "path")?)?;
        *out = Box::into_raw(Box::new(PfvaConfig(cfg)));
        Ok(())
    })
}

/// Set the allocation policy by name (`velocity_only`, `force_only`,
/// `min_norm`).
///
/// # Safety
/// `cfg` must be NULL or a live handle; `policy` NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pfva_config_set_policy(
    cfg: *mut PfvaConfig,
    policy: *const c_char,
) -> PfvaStatus {
    guard(|| {
        let cfg = out_ref(cfg, "cfg")?;
        cfg.0.policy = in_str(policy, "policy")?.parse::<AllocationPolicy>()?;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be NULL or a handle from a `pfva_config_*` constructor that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn pfva_config_free(cfg: *mut PfvaConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// One run at `rho` under `cfg`.
///
/// # Safety
/// `cfg` must be NULL or a live handle; `out` NULL or a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn pfva_simulate(
    cfg: *const PfvaConfig,
    rho: f64,
    out: *mut *mut PfvaRun,
) -> PfvaStatus {
    guard(|| {
        let cfg = in_ref(cfg, "cfg")?;
        let out = out_ref(out, "out")?;
        let records = run_simulation(&cfg.0, rho)?;
        *out = Box::into_raw(Box::new(PfvaRun(records)));
        Ok(())
    })
}

/// Number of samples in a run; 0 for NULL.
///
/// # Safety
/// `run` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfva_run_len(run: *const PfvaRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.len())
}

/// # Safety
/// `run` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pfva_run_record(
    run: *const PfvaRun,
    index: usize,
    out: *mut PfvaRecord,
) -> PfvaStatus {
    guard(|| {
        let run = in_ref(run, "run")?;
        let out = out_ref(out, "out")?;
        let rec = run.0.get(index).ok_or(Fail::Index {
            index,
            len: run.0.len(),
        })?;
        *out = rec.into();
        Ok(())
    })
}

/// Write the run as CSV, creating parent directories.
///
/// # Safety
/// `run` must be NULL or a live handle; `path` NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pfva_run_write_csv(
    run: *const PfvaRun,
    path: *const c_char,
) -> PfvaStatus {
    guard(|| {
        let run = in_ref(run, "run")?;
        emit_csv(&run.0, PathBuf::from(in_str(path, "path")?))?;
        Ok(())
    })
}

/// # Safety
/// `run` must be NULL or a handle from [`pfva_simulate`] that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn pfva_run_free(run: *mut PfvaRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Summaries for `n` values of ρ, in the given order. With `rhos` NULL and
/// `n` 0 the configured sweep is used.
///
/// # Safety
/// `cfg` must be NULL or a live handle; `rhos` NULL or `n` readable doubles;
/// `out` NULL or a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn pfva_sweep(
    cfg: *const PfvaConfig,
    rhos: *const f64,
    n: usize,
    out: *mut *mut PfvaSweep,
) -> PfvaStatus {
    guard(|| {
        let cfg = in_ref(cfg, "cfg")?;
        let out = out_ref(out, "out")?;
        let rhos: &[f64] = match (rhos.is_null(), n) {
            (true, 0) => &cfg.0.rhos,
            (true, _) => return Err(Fail::Null("rhos")),
            (false, _) => std::slice::from_raw_parts(rhos, n),
        };
        let summary = sweep_rho(&cfg.0, rhos)?;
        *out = Box::into_raw(Box::new(PfvaSweep(summary.rows)));
        Ok(())
    })
}

/// Number of rows in a sweep; 0 for NULL.
///
/// # Safety
/// `sweep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfva_sweep_len(sweep: *const PfvaSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sweep` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pfva_sweep_row(
    sweep: *const PfvaSweep,
    index: usize,
    out: *mut PfvaSweepRow,
) -> PfvaStatus {
    guard(|| {
        let sweep = in_ref(sweep, "sweep")?;
        let out = out_ref(out, "out")?;
        let row = sweep.0.get(index).ok_or(Fail::Index {
            index,
            len: sweep.0.len(),
        })?;
        *out = row.into();
        Ok(())
    })
}

/// # Safety
/// `sweep` must be NULL or a live handle; `path` NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pfva_sweep_write_csv(
    sweep: *const PfvaSweep,
    path: *const c_char,
) -> PfvaStatus {
    guard(|| {
        let sweep = in_ref(sweep, "sweep")?;
        emit_csv(&sweep.0, PathBuf::from(in_str(path, "path")?))?;
        Ok(())
    })
}

/// # Safety
/// `sweep` must be NULL or a handle from [`pfva_sweep`] that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn pfva_sweep_free(sweep: *mut PfvaSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

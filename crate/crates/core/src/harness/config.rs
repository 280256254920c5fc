//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # crank-slider
//! crank_r   = 0.15
//! coupler_l = 0.45
//! rhos      = 5, 10, 15
//! policy    = velocity_only
//! ```
//!
//! `#` starts a comment. Unknown or repeated keys are errors. Keys that are
//! absent keep their defaults.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::coupling::MotorInertias;
use crate::dynamics::AllocationPolicy;
use crate::error::{Error, Result};
use crate::mechanism::{CrankSliderGeometry, MechanismMasses};
use crate::trajectory::{plan_trapezoid, TrapezoidProfile};

pub const KEYS: [&str; 16] = [
    "crank_r",
    "coupler_l",
    "i_crank",
    "m_coupler",
    "m_slider",
    "i_mv",
    "i_mf",
    "x0",
    "xf",
    "v_max",
    "a_max",
    "sample_rate_hz",
    "rho",
    "rhos",
    "policy",
    "output",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub geometry: CrankSliderGeometry,
    pub masses: MechanismMasses,
    pub motors: MotorInertias,
    pub x0: f64,
    pub xf: f64,
    pub v_max: f64,
    pub a_max: f64,
    pub sample_rate_hz: f64,
    /// Single-run value used by `simulate`.
    pub rho: f64,
    /// Sweep list used by `sweep`.
    pub rhos: Vec<f64>,
    pub policy: AllocationPolicy,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            geometry: CrankSliderGeometry::default(),
            masses: MechanismMasses::default(),
            motors: MotorInertias {
                i_mv: 1e-4,
                i_mf: 1e-4,
            },
            x0: 0.3263,
            xf: 0.5873,
            v_max: 0.3,
            a_max: 1.0,
            sample_rate_hz: 1000.0,
            rho: 5.0,
            rhos: (5..=15).map(f64::from).collect(),
            policy: AllocationPolicy::VelocityOnly,
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let (mut crank_r, mut coupler_l) = (cfg.geometry.crank_r(), cfg.geometry.coupler_l());
        let mut seen = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(err(format!("unknown key {key:?}")));
            }
            if !seen.insert(key.to_owned()) {
                return Err(err(format!("duplicate key {key:?}")));
            }
            let num = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| err(format!("{key}: expected a finite number, got {v:?}")))
            };
            match key {
                "crank_r" => crank_r = num(value)?,
                "coupler_l" => coupler_l = num(value)?,
                "i_crank" => cfg.masses.i_crank = num(value)?,
                "m_coupler" => cfg.masses.m_coupler = num(value)?,
                "m_slider" => cfg.masses.m_slider = num(value)?,
                "i_mv" => cfg.motors.i_mv = num(value)?,
                "i_mf" => cfg.motors.i_mf = num(value)?,
                "x0" => cfg.x0 = num(value)?,
                "xf" => cfg.xf = num(value)?,
                "v_max" => cfg.v_max = num(value)?,
                "a_max" => cfg.a_max = num(value)?,
                "sample_rate_hz" => cfg.sample_rate_hz = num(value)?,
                "rho" => cfg.rho = num(value)?,
                "rhos" => {
                    cfg.rhos = value
                        .split(',')
                        .map(|v| num(v.trim()))
                        .collect::<Result<Vec<_>>>()?;
                }
                "policy" => {
                    cfg.policy = value.parse().map_err(|e: Error| err(e.to_string()))?;
                }
                "output" => {
                    if value.is_empty() {
                        return Err(err("output: empty path".into()));
                    }
                    cfg.output = Some(PathBuf::from(value));
                }
                _ => unreachable!("key list and match arms disagree"),
            }
        }

        cfg.geometry = CrankSliderGeometry::new(crank_r, coupler_l)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Check every physical quantity and the sweep list.
    pub fn validate(&self) -> Result<()> {
        self.masses.validate()?;
        self.motors.validate()?;
        if !(self.sample_rate_hz > 0.0 && self.sample_rate_hz.is_finite()) {
            return Err(Error::NonPositiveLimit {
                what: "sample_rate_hz",
                value: self.sample_rate_hz,
            });
        }
        plan_trapezoid(self.x0, self.xf, self.v_max, self.a_max)?;
        check_rho(self.rho)?;
        if self.rhos.is_empty() {
            return Err(Error::invalid("rhos", "sweep list is empty"));
        }
        self.rhos.iter().try_for_each(|&r| check_rho(r))
    }

    pub fn profile(&self) -> Result<TrapezoidProfile> {
        plan_trapezoid(self.x0, self.xf, self.v_max, self.a_max)
    }

    /// Render back to the file format; `parse(to_config_string())` is the
    /// identity.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("crank_r", self.geometry.crank_r().to_string());
        kv("coupler_l", self.geometry.coupler_l().to_string());
        kv("i_crank", self.masses.i_crank.to_string());
        kv("m_coupler", self.masses.m_coupler.to_string());
        kv("m_slider", self.masses.m_slider.to_string());
        kv("i_mv", self.motors.i_mv.to_string());
        kv("i_mf", self.motors.i_mf.to_string());
        kv("x0", self.x0.to_string());
        kv("xf", self.xf.to_string());
        kv("v_max", self.v_max.to_string());
        kv("a_max", self.a_max.to_string());
        kv("sample_rate_hz", self.sample_rate_hz.to_string());
        kv("rho", self.rho.to_string());
        kv(
            "rhos",
            self.rhos
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        );
        kv("policy", self.policy.to_string());
        if let Some(out) = &self.output {
            kv("output", out.display().to_string());
        }
        s
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::invalid("rho", format!("must be finite, got {rho}")));
    }
    if rho == -1.0 {
        return Err(Error::SingularRatio { rho });
    }
    Ok(())
}

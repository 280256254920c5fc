//! Apparent inertia at the two actuator inputs and the coupling term μ.
//!
//! A single-DOF load with joint-side inertia `I` driven through the train is
//! seen at the inputs as
//!
//! ```text
//!          ┌ I_Mv + I/(ρ+1)²     I·ρ/(ρ+1)²     ┐
//! I_φφ  =  │                                      │
//!          └ I·ρ/(ρ+1)²          I_Mf + I·ρ²/(ρ+1)² ┘
//! ```
//!
//! i.e. `diag(I_Mv, I_Mf) + I·gᵀg` with `g = [R_v, R_f]`. The off-diagonal
//! entry is μ; it peaks at ρ = 1 and vanishes as ρ → ∞.

use rayon::prelude::*;

use crate::error::{check_inertia, Error, Result};
use crate::gear_train::GearReductions;

/// Rotor inertias of the two input motors (kg·m²).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MotorInertias {
    pub i_mv: f64,
    pub i_mf: f64,
}

impl MotorInertias {
    pub fn new(i_mv: f64, i_mf: f64) -> Result<Self> {
        let m = Self { i_mv, i_mf };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        check_inertia("i_mv", self.i_mv)?;
        check_inertia("i_mf", self.i_mf)
    }
}

/// Symmetric 2×2 input-space inertia matrix (kg·m²), rows/cols ordered
/// (velocity input, force input).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReflectedInertia2x2 {
    pub a_vv: f64,
    pub a_vf: f64,
    pub a_fv: f64,
    pub a_ff: f64,
}

impl ReflectedInertia2x2 {
    /// The coupling term μ (the off-diagonal entry).
    pub fn mu(&self) -> f64 {
        self.a_vf
    }

    pub fn as_array(&self) -> [[f64; 2]; 2] {
        [[self.a_vv, self.a_vf], [self.a_fv, self.a_ff]]
    }

    pub fn determinant(&self) -> f64 {
        self.a_vv * self.a_ff - self.a_vf * self.a_fv
    }

    /// `M·[x_v, x_f]ᵀ`.
    pub fn apply(&self, x_v: f64, x_f: f64) -> (f64, f64) {
        (
            self.a_vv * x_v + self.a_vf * x_f,
            self.a_fv * x_v + self.a_ff * x_f,
        )
    }
}

fn check_joint_inertia(i_joint: f64) -> Result<()> {
    check_inertia("i_joint", i_joint)
}

/// Input-space inertia for relative scale factor `rho`.
pub fn reflected_inertia(rho: f64, i_joint: f64, m: &MotorInertias) -> Result<ReflectedInertia2x2> {
    let g = GearReductions::from_rho(rho)?;
    reflected_inertia_for(&g, i_joint, m)
}

/// As [`reflected_inertia`], for reductions already in hand.
pub fn reflected_inertia_for(
    g: &GearReductions,
    i_joint: f64,
    m: &MotorInertias,
) -> Result<ReflectedInertia2x2> {
    check_joint_inertia(i_joint)?;
    m.validate()?;
    let [r_v, r_f] = g.velocity_ratios();
    let mu = i_joint * r_v * r_f;
    Ok(ReflectedInertia2x2 {
        a_vv: m.i_mv + i_joint * r_v * r_v,
        a_vf: mu,
        a_fv: mu,
        a_ff: m.i_mf + i_joint * r_f * r_f,
    })
}

/// μ = I·ρ/(ρ+1)².
pub fn coupling_mu(rho: f64, i_joint: f64) -> Result<f64> {
    let denom = rho + 1.0;
    if denom == 0.0 {
        return Err(Error::SingularRatio { rho });
    }
    check_joint_inertia(i_joint)?;
    Ok(i_joint * rho / (denom * denom))
}

/// dμ/dρ = I·(1−ρ)/(ρ+1)³.
pub fn coupling_sensitivity(rho: f64, i_joint: f64) -> Result<f64> {
    let denom = rho + 1.0;
    if denom == 0.0 {
        return Err(Error::SingularRatio { rho });
    }
    check_joint_inertia(i_joint)?;
    Ok(i_joint * (1.0 - rho) / (denom * denom * denom))
}

/// The ρ → ∞ limit: the velocity input sees only its rotor, the force input
/// carries the whole load, and the coupling vanishes.
pub fn limit_reflected_inertia(i_joint: f64, m: &MotorInertias) -> Result<ReflectedInertia2x2> {
    check_joint_inertia(i_joint)?;
    m.validate()?;
    Ok(ReflectedInertia2x2 {
        a_vv: m.i_mv,
        a_vf: 0.0,
        a_fv: 0.0,
        a_ff: m.i_mf + i_joint,
    })
}

/// Sample placement for [`mu_curve`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Spacing {
    #[default]
    Linear,
    /// Uniform in log10(ρ); needs a positive interval.
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub rho: f64,
    pub mu: f64,
    pub dmu_drho: f64,
}

/// μ and dμ/dρ sampled at `n_samples` points over `[rho_min, rho_max]`,
/// endpoints included.
pub fn mu_curve(
    rho_min: f64,
    rho_max: f64,
    n_samples: usize,
    i_joint: f64,
    spacing: Spacing,
) -> Result<Vec<CurvePoint>> {
    if !(rho_min.is_finite() && rho_max.is_finite()) || rho_min >= rho_max {
        return Err(Error::invalid(
            "rho range",
            format!("need finite rho_min < rho_max, got [{rho_min}, {rho_max}]"),
        ));
    }
    if n_samples < 2 {
        return Err(Error::invalid(
            "n_samples",
            format!("need at least 2, got {n_samples}"),
        ));
    }
    if rho_min <= -1.0 && rho_max >= -1.0 {
        return Err(Error::IntervalContainsSingularity {
            min: rho_min,
            max: rho_max,
        });
    }
    if spacing == Spacing::Log && rho_min <= 0.0 {
        return Err(Error::invalid("rho range", "log spacing needs rho_min > 0"));
    }
    check_joint_inertia(i_joint)?;

    let last = (n_samples - 1) as f64;
    let (lo, hi) = match spacing {
        Spacing::Linear => (rho_min, rho_max),
        Spacing::Log => (rho_min.log10(), rho_max.log10()),
    };
    (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let rho = match i {
                0 => rho_min,
                _ if i == n_samples - 1 => rho_max,
                _ => {
                    let s = lo + (hi - lo) * (i as f64 / last);
                    match spacing {
                        Spacing::Linear => s,
                        Spacing::Log => 10f64.powf(s),
                    }
                }
            };
            Ok(CurvePoint {
                rho,
                mu: coupling_mu(rho, i_joint)?,
                dmu_drho: coupling_sensitivity(rho, i_joint)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NO_MOTORS: MotorInertias = MotorInertias {
        i_mv: 0.0,
        i_mf: 0.0,
    };

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs())
    }

    fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn reflected_inertia_examples() {
        let m = reflected_inertia(1.0, 1.0, &NO_MOTORS).unwrap();
        assert_eq!(m.as_array(), [[0.25, 0.25], [0.25, 0.25]]);

        let m = reflected_inertia(5.0, 36.0, &NO_MOTORS).unwrap();
        let expect = [[1.0, 5.0], [5.0, 25.0]];
        for (row, erow) in m.as_array().iter().zip(expect) {
            for (v, e) in row.iter().zip(erow) {
                assert!(rel_close(*v, e, 1e-14), "{v} vs {e}");
            }
        }

        let motors = MotorInertias::new(0.1, 0.2).unwrap();
        let m = reflected_inertia(1e6, 1.0, &motors).unwrap();
        let expect = [[0.1, 0.0], [0.0, 1.2]];
        for (row, erow) in m.as_array().iter().zip(expect) {
            for (v, e) in row.iter().zip(erow) {
                assert!((v - e).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn reflected_inertia_errors() {
        assert!(matches!(
            reflected_inertia(-1.0, 1.0, &NO_MOTORS),
            Err(Error::SingularRatio { .. })
        ));
        assert!(matches!(
            reflected_inertia(2.0, -1.0, &NO_MOTORS),
            Err(Error::NegativeInertia { .. })
        ));
        assert!(MotorInertias::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(coupling_mu(1.0, 1.0).unwrap(), 0.25);
        assert!(rel_close(coupling_mu(5.0, 1.0).unwrap(), 5.0 / 36.0, 1e-15));
        assert!(rel_close(
            coupling_mu(15.0, 1.0).unwrap(),
            15.0 / 256.0,
            1e-15
        ));
        assert!(coupling_mu(-1.0, 1.0).is_err());
    }

    #[test]
    fn sensitivity_examples() {
        assert_eq!(coupling_sensitivity(1.0, 1.0).unwrap(), 0.0);
        assert!(rel_close(
            coupling_sensitivity(3.0, 1.0).unwrap(),
            -0.03125,
            1e-15
        ));
        let fd = central_difference(|r| coupling_mu(r, 1.0).unwrap(), 5.0, 1e-6);
        assert!((coupling_sensitivity(5.0, 1.0).unwrap() - fd).abs() < 1e-6);
        assert!(coupling_sensitivity(-1.0, 1.0).is_err());
    }

    #[test]
    fn sensitivity_matches_finite_difference() {
        for rho in [0.1, 0.5, 2.0, 5.0, 15.0, 100.0] {
            let h = 1e-6 * f64::max(1.0, rho);
            let fd = central_difference(|r| coupling_mu(r, 1.0).unwrap(), rho, h);
            let analytic = coupling_sensitivity(rho, 1.0).unwrap();
            assert!(
                rel_close(analytic, fd, 1e-6),
                "rho={rho}: {analytic} vs {fd}"
            );
        }
    }

    #[test]
    fn limit_examples() {
        let m = limit_reflected_inertia(1.0, &NO_MOTORS).unwrap();
        assert_eq!(m.as_array(), [[0.0, 0.0], [0.0, 1.0]]);
        let m = limit_reflected_inertia(0.0, &MotorInertias::new(2.0, 3.0).unwrap()).unwrap();
        assert_eq!(m.as_array(), [[2.0, 0.0], [0.0, 3.0]]);

        let motors = MotorInertias::new(0.1, 0.2).unwrap();
        let lim = limit_reflected_inertia(1.0, &motors).unwrap().as_array();
        let big = reflected_inertia(1e8, 1.0, &motors).unwrap().as_array();
        for i in 0..2 {
            for j in 0..2 {
                assert!((lim[i][j] - big[i][j]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn curve_three_points() {
        let c = mu_curve(5.0, 15.0, 3, 1.0, Spacing::Linear).unwrap();
        let rhos: Vec<_> = c.iter().map(|p| p.rho).collect();
        assert_eq!(rhos, [5.0, 10.0, 15.0]);
        let expect = [0.138889, 0.0826446, 0.0585938];
        for (p, e) in c.iter().zip(expect) {
            assert!((p.mu - e).abs() < 1e-6, "{} vs {e}", p.mu);
        }
    }

    #[test]
    fn curve_peak_near_unity() {
        let c = mu_curve(0.01, 100.0, 401, 1.0, Spacing::Log).unwrap();
        let peak = c.iter().max_by(|a, b| a.mu.total_cmp(&b.mu)).unwrap();
        assert_eq!(peak.rho, 1.0);
        assert_eq!(peak.mu, 0.25);

        // Linear spacing misses ρ = 1; the peak is still the closest sample.
        let c = mu_curve(0.01, 100.0, 1000, 1.0, Spacing::Linear).unwrap();
        let peak = c.iter().max_by(|a, b| a.mu.total_cmp(&b.mu)).unwrap();
        let nearest = c
            .iter()
            .min_by(|a, b| (a.rho - 1.0).abs().total_cmp(&(b.rho - 1.0).abs()))
            .unwrap();
        assert_eq!(peak.rho, nearest.rho);
    }

    #[test]
    fn curve_degenerate_interval() {
        let c = mu_curve(1.0, 1.0 + 1e-12, 2, 1.0, Spacing::Linear).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0].mu - c[1].mu).abs() < 1e-15);
    }

    #[test]
    fn curve_errors() {
        assert!(matches!(
            mu_curve(-2.0, 0.0, 10, 1.0, Spacing::Linear),
            Err(Error::IntervalContainsSingularity { .. })
        ));
        assert!(mu_curve(2.0, 1.0, 10, 1.0, Spacing::Linear).is_err());
        assert!(mu_curve(1.0, 2.0, 1, 1.0, Spacing::Linear).is_err());
        assert!(mu_curve(0.0, 2.0, 10, 1.0, Spacing::Log).is_err());
        // Entirely below the singularity is fine.
        assert!(mu_curve(-10.0, -2.0, 5, 1.0, Spacing::Linear).is_ok());
    }

    #[test]
    fn limits_at_large_rho() {
        let rho = 1e6;
        assert!(coupling_mu(rho, 1.0).unwrap() < 1e-5);
        assert!(coupling_sensitivity(rho, 1.0).unwrap().abs() < 1e-5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn mu_symmetric_under_reciprocal(rho in 1e-4f64..1e4, i in 0.0f64..100.0) {
            let a = coupling_mu(rho, i).unwrap();
            let b = coupling_mu(1.0 / rho, i).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()));
        }

        #[test]
        fn mu_bounded_by_quarter(rho in 0.0f64..1e6, i in 0.0f64..100.0) {
            prop_assert!(coupling_mu(rho, i).unwrap() <= i / 4.0);
        }

        #[test]
        fn mu_monotone_either_side_of_unity(a in 1.0f64..1e4, da in 1e-3f64..10.0) {
            let b = a + da;
            prop_assert!(coupling_mu(b, 1.0).unwrap() < coupling_mu(a, 1.0).unwrap());
            prop_assert!(coupling_mu(1.0 / b, 1.0).unwrap() < coupling_mu(1.0 / a, 1.0).unwrap());
        }

        #[test]
        fn mu_linear_in_inertia(rho in 0.0f64..1e3, i in 0.0f64..10.0, c in 0.0f64..10.0) {
            let lhs = coupling_mu(rho, c * i).unwrap();
            let rhs = c * coupling_mu(rho, i).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs().max(1e-300));
        }

        #[test]
        fn reflected_inertia_structure(
            rho in (-1e3f64..1e3).prop_filter("away from -1", |r| (r + 1.0).abs() > 1e-3),
            i in 0.0f64..100.0,
            i_mv in 0.0f64..10.0,
            i_mf in 0.0f64..10.0,
        ) {
            let motors = MotorInertias::new(i_mv, i_mf).unwrap();
            let m = reflected_inertia(rho, i, &motors).unwrap();
            prop_assert_eq!(m.a_vf, m.a_fv);
            prop_assert_eq!(m.mu(), m.a_vf);

            // PSD: nonnegative diagonal and determinant (up to rounding).
            let scale = m.a_vv.abs().max(m.a_ff.abs()).max(1e-300);
            prop_assert!(m.a_vv >= 0.0 && m.a_ff >= 0.0);
            prop_assert!(m.determinant() >= -1e-12 * scale * scale);

            // Excess over the rotor diagonal is I·vᵀv with v = [1/(ρ+1), ρ/(ρ+1)].
            let v = [1.0 / (rho + 1.0), rho / (rho + 1.0)];
            let ex = [[m.a_vv - i_mv, m.a_vf], [m.a_fv, m.a_ff - i_mf]];
            let ex_scale = i * (v[0] * v[0] + v[1] * v[1]);
            for r in 0..2 {
                for c in 0..2 {
                    prop_assert!((ex[r][c] - i * v[r] * v[c]).abs() <= 1e-12 * ex_scale.max(1e-300) + 1e-12 * scale);
                }
            }
            let det_ex = ex[0][0] * ex[1][1] - ex[0][1] * ex[1][0];
            prop_assert!(det_ex.abs() <= 1e-12 * (ex[0][0] * ex[1][1]).abs().max(1e-300) + 1e-12 * scale * scale);
        }
    }
}

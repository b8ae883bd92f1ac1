//! Radial Fourier transforms of spherically symmetric functions,
//!
//! ```text
//! F(p) = (4π/p) ∫₀^∞ dr r f(r) sin(p r)
//! ```
//!
//! The half line is cut into half-periods `[nπ/p, (n+1)π/p]`, each cell is
//! integrated with adaptive Gauss–Kronrod, and the resulting alternating
//! series is summed with the Levin u-transform. Functions with bounded
//! support are summed exactly up to the support edge.
//!
//! When a function is even and analytic in a strip `|Im r| < d`, the
//! transform decays like `e^{-p d}` and direct summation loses every digit to
//! cancellation. For `p d` large the integration line is moved to
//! `Im r = c < d`, which factors out `e^{-p c}` analytically and leaves an
//! integrand of order one.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundstate::BoundState;
use crate::error::{positive, Error, Result};
use crate::potentials::PotentialSpec;
use crate::quadrature::{adaptive, levin_u, Quad};

/// Above this value of `p d` the shifted contour is used.
const CONTOUR_ONSET: f64 = 3.0;
/// Distance (in units of `1/p`) kept between the shifted line and the
/// nearest singularity.
const CONTOUR_STANDOFF: f64 = 1.5;
/// Adaptive subdivision budget per half-period cell.
const MAX_CELL_SEGMENTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FtConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_half_periods: usize,
    /// Number of partial sums (minus one) fed to the Levin transform.
    pub accel_order: usize,
    /// Known discontinuity to split at.
    pub r_break: Option<f64>,
}

impl Default for FtConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_half_periods: 1_000_000,
            accel_order: 12,
            r_break: None,
        }
    }
}

impl FtConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_break(mut self, r: f64) -> Self {
        self.r_break = Some(r);
        self
    }

    pub fn validate(&self) -> Result<()> {
        positive("rel_tol", self.rel_tol)?;
        positive("abs_tol", self.abs_tol)?;
        if self.accel_order < 2 {
            return Err(Error::InvalidParameter {
                name: "accel_order",
                reason: format!("must be >= 2, got {}", self.accel_order),
            });
        }
        if self.max_half_periods == 0 {
            return Err(Error::InvalidParameter {
                name: "max_half_periods",
                reason: "must be positive".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FtMethod {
    Analytic,
    /// Closed-form leading large-momentum term only.
    Asymptotic,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FtResult {
    pub value: f64,
    pub err_estimate: f64,
    pub method: FtMethod,
    pub half_periods_used: usize,
}

/// A spherically symmetric function `f(r)` to be transformed.
pub trait RadialFunction {
    fn value(&self, r: f64) -> f64;

    /// `r f(r)`; override where the product is better behaved than `f`.
    fn weighted(&self, r: f64) -> f64 {
        r * self.value(r)
    }

    /// Points where `f` or a low derivative is discontinuous.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// `f` vanishes identically beyond this radius.
    fn support(&self) -> Option<f64> {
        None
    }

    /// Half-width `d` of the strip around the real axis in which the even
    /// extension of `f` is analytic. Requires [`RadialFunction::weighted_complex`].
    fn analytic_strip(&self) -> Option<f64> {
        None
    }

    /// `z f(z)` continued off the real axis.
    fn weighted_complex(&self, _z: Complex64) -> Option<Complex64> {
        None
    }
}

impl<F: Fn(f64) -> f64> RadialFunction for F {
    fn value(&self, r: f64) -> f64 {
        self(r)
    }
}

/// Computes `(4π/p) ∫₀^∞ dr r f(r) sin(p r)`.
pub fn radial_ft<F: RadialFunction + ?Sized>(f: &F, p: f64, cfg: &FtConfig) -> Result<FtResult> {
    positive("p", p)?;
    cfg.validate()?;
    let prefactor = 4.0 * PI / p;
    // tolerances of the bare integral ∫ r f sin
    let abs_tol = cfg.abs_tol / prefactor;

    let shift = match (f.analytic_strip(), f.support()) {
        (Some(d), None) if p * d > CONTOUR_ONSET => {
            let c = d - CONTOUR_STANDOFF / p;
            f.weighted_complex(Complex64::new(0.0, c)).map(|_| c)
        }
        _ => None,
    };

    let sum = match shift {
        Some(c) => {
            let mut integrand = |x: f64| {
                let z = Complex64::new(x, c);
                let g = f.weighted_complex(z).unwrap_or(Complex64::new(f64::NAN, 0.0));
                (g * Complex64::new(0.0, p * x).exp()).im
            };
            // ∫₀^∞ g(r) sin(pr) dr = e^{-pc} ∫₀^∞ Im[g(x+ic) e^{ipx}] dx
            // the shifted integral is O(1) whatever p is, so the absolute
            // tolerance is not rescaled: relative accuracy carries over
            let scale = (-p * c).exp();
            let s = oscillatory_sum(&mut integrand, p, &[], None, cfg, abs_tol)?;
            SeriesSum {
                value: s.value * scale,
                error: s.error * scale,
                cells: s.cells,
            }
        }
        None => {
            let mut breaks = f.breakpoints();
            breaks.extend(cfg.r_break);
            breaks.retain(|b| b.is_finite() && *b > 0.0);
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
            let mut integrand = |r: f64| f.weighted(r) * (p * r).sin();
            oscillatory_sum(&mut integrand, p, &breaks, f.support(), cfg, abs_tol)?
        }
    };

    let value = prefactor * sum.value;
    let err_estimate = prefactor * sum.error;
    let tol = cfg.rel_tol * value.abs() + cfg.abs_tol;
    if err_estimate > tol {
        return Err(Error::ToleranceNotMet { err: err_estimate, tol });
    }
    Ok(FtResult {
        value,
        err_estimate,
        method: FtMethod::Quadrature,
        half_periods_used: sum.cells,
    })
}

/// Quadrature transform of a catalog or tabulated potential.
///
/// The delta shell and the bare Coulomb field have no convergent quadrature
/// and are rejected; use [`PotentialSpec::analytic_ft`] for them.
pub fn potential_ft(spec: &PotentialSpec, p: f64, cfg: &FtConfig) -> Result<FtResult> {
    match spec {
        PotentialSpec::DiracBubble(_) => Err(Error::NotPointwise),
        PotentialSpec::Coulomb(_) => Err(Error::AnalyticOnly("coulomb")),
        _ => radial_ft(spec, p, cfg),
    }
}

/// Best available `V(p)`: closed form where exact, quadrature otherwise.
pub fn best_ft(spec: &PotentialSpec, p: f64, cfg: &FtConfig) -> Result<FtResult> {
    match spec.analytic_ft(p)? {
        Some(r) if r.method == FtMethod::Analytic => Ok(r),
        _ => potential_ft(spec, p, cfg),
    }
}

/// Loosest relative tolerance [`ft_wavefunction`] will accept.
pub const WAVEFUNCTION_REL_TOL: f64 = 1e-8;

/// Momentum-space bound-state function
/// `ψ(p) = (4π/p) ∫ dr u(r) sin(p r)` with `u = r ψ(r)` taken from the solver
/// grid and continued as `u_N e^{-μ (r - r_N)}` beyond it.
///
/// The requested relative tolerance is floored at [`WAVEFUNCTION_REL_TOL`]:
/// the grid function itself carries no more digits than that, and at large
/// `p` the cell sums cancel to below the rounding floor of tighter targets.
pub fn ft_wavefunction(bs: &BoundState, p: f64, cfg: &FtConfig) -> Result<FtResult> {
    positive("p", p)?;
    let grid = bs.interpolant();
    let cfg = cfg.with_rel_tol(cfg.rel_tol.max(WAVEFUNCTION_REL_TOL));
    let mut res = radial_ft(&grid, p, &cfg)?;
    let r_n = bs.r_max();
    let u_n = *bs.u.last().expect("non-empty grid");
    let mu = bs.mu;
    let tail = u_n * (mu * (p * r_n).sin() + p * (p * r_n).cos()) / (mu * mu + p * p);
    res.value += 4.0 * PI / p * tail;
    Ok(res)
}

struct SeriesSum {
    value: f64,
    error: f64,
    cells: usize,
}

fn oscillatory_sum<G: FnMut(f64) -> f64>(
    integrand: &mut G,
    p: f64,
    breaks: &[f64],
    support: Option<f64>,
    cfg: &FtConfig,
    abs_tol: f64,
) -> Result<SeriesSum> {
    let half = PI / p;
    let k = cfg.accel_order;
    let cell_rel = (cfg.rel_tol * 1e-3).max(1e-14);
    let cell_abs = abs_tol * 1e-3;

    let mut sums: Vec<f64> = Vec::new();
    let mut terms: Vec<f64> = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut s = 0.0;
    let mut abs_total = 0.0;
    let mut cell_err = 0.0;

    for n in 0..cfg.max_half_periods {
        let a = n as f64 * half;
        let mut b = (n + 1) as f64 * half;
        if let Some(edge) = support {
            if a >= edge {
                return Ok(SeriesSum {
                    value: s,
                    error: cell_err + 8.0 * f64::EPSILON * abs_total,
                    cells: n,
                });
            }
            b = b.min(edge);
        }
        let q = integrate_cell(integrand, a, b, breaks, cell_abs, cell_rel)?;
        s += q.value;
        abs_total += q.abs_value;
        cell_err += q.error;
        sums.push(s);
        terms.push(q.value);
        if support.is_some() {
            continue;
        }

        let tol = |v: f64| 0.5 * (cfg.rel_tol * v.abs() + abs_tol);
        // The series has terminated at working precision.
        if n + 1 > k && terms[n].abs() + terms[n - 1].abs() <= 0.1 * tol(s) {
            return Ok(SeriesSum {
                value: s,
                error: terms[n].abs() + cell_err + 8.0 * f64::EPSILON * abs_total,
                cells: n + 1,
            });
        }
        if n >= k {
            let lo = n - k;
            match levin_u(&sums[lo..=n], &terms[lo..=n], lo) {
                Some(est) => estimates.push(est),
                None => {
                    estimates.clear();
                    continue;
                }
            }
            if let [.., e2, e1, e0] = estimates[..] {
                let d = (e0 - e1).abs().max((e1 - e2).abs());
                if d <= tol(e0) {
                    return Ok(SeriesSum {
                        value: e0,
                        error: d + cell_err + 8.0 * f64::EPSILON * abs_total,
                        cells: n + 1,
                    });
                }
            }
        }
    }
    Err(Error::NotConverged {
        half_periods: cfg.max_half_periods,
    })
}

fn integrate_cell<G: FnMut(f64) -> f64>(
    integrand: &mut G,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quad> {
    let mut total = Quad {
        value: 0.0,
        error: 0.0,
        abs_value: 0.0,
    };
    let mut left = a;
    for &bp in breaks.iter().filter(|&&bp| bp > a && bp < b) {
        add(
            &mut total,
            adaptive(integrand, left, bp, abs_tol, rel_tol, MAX_CELL_SEGMENTS)?,
        );
        left = bp;
    }
    add(
        &mut total,
        adaptive(integrand, left, b, abs_tol, rel_tol, MAX_CELL_SEGMENTS)?,
    );
    Ok(total)
}

fn add(total: &mut Quad, q: Quad) {
    total.value += q.value;
    total.error += q.error;
    total.abs_value += q.abs_value;
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> FtConfig {
        FtConfig::default()
    }

    #[test]
    fn exponential_matches_closed_form() {
        let f = |r: f64| (-r).exp();
        for p in [0.05, 0.3, 1.0, 7.0, 60.0] {
            let res = radial_ft(&f, p, &cfg()).unwrap();
            let exact = 8.0 * PI / (1.0 + p * p).powi(2);
            assert_relative_eq!(res.value, exact, max_relative = 1e-10);
            assert!(res.err_estimate >= (res.value - exact).abs() * 0.999);
        }
        let res = radial_ft(&f, 1.0, &cfg()).unwrap();
        assert_relative_eq!(res.value, 2.0 * PI, max_relative = 1e-10);
        assert_eq!(res.method, FtMethod::Quadrature);
    }

    #[test]
    fn slowly_decaying_integrand_needs_acceleration() {
        // r f(r) = 1/(1+r)^2: the tail decays only algebraically.
        let f = |r: f64| 1.0 / (r * (1.0 + r).powi(2));
        let res = radial_ft(&f, 2.0, &cfg()).unwrap();
        // independent value from the cosine form: p ∫ cos(pr)/(1+r) dr
        // = p [-Ci(p) cos p - (Si(p) - π/2) sin p] at p = 2
        let ci2 = 0.422_980_828_774_864_9;
        let si2 = 1.605_412_976_802_694_8;
        let inner = 2.0 * (-ci2 * 2f64.cos() - (si2 - PI / 2.0) * 2f64.sin());
        assert_relative_eq!(res.value, 4.0 * PI / 2.0 * inner, max_relative = 1e-9);
        assert!(res.half_periods_used > 12);
    }

    #[test]
    fn bad_inputs() {
        let f = |r: f64| (-r).exp();
        assert!(radial_ft(&f, 0.0, &cfg()).is_err());
        let mut c = cfg();
        c.accel_order = 1;
        assert!(radial_ft(&f, 1.0, &c).is_err());
        let nan = |_r: f64| f64::NAN;
        assert!(matches!(radial_ft(&nan, 1.0, &cfg()), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn non_decaying_integrand_reports_non_convergence() {
        let f = |r: f64| (0.3 * r).cos() / r.max(1e-300) * r.sqrt();
        let mut c = cfg();
        c.max_half_periods = 200;
        assert!(matches!(
            radial_ft(&f, 1.0, &c),
            Err(Error::NotConverged { .. }) | Err(Error::ToleranceNotMet { .. })
        ));
    }

    #[test]
    fn delta_shell_and_coulomb_are_analytic_only() {
        let b = PotentialSpec::dirac_bubble(-1.0, 1.0).unwrap();
        assert_eq!(potential_ft(&b, 1.0, &cfg()), Err(Error::NotPointwise));
        let c = PotentialSpec::coulomb(1.0).unwrap();
        assert!(potential_ft(&c, 1.0, &cfg()).is_err());
    }

    #[test]
    fn contour_shift_resolves_exponentially_small_transforms() {
        let l = PotentialSpec::lorentzian(-1.0, 1.0).unwrap();
        for p in [2.0, 4.0, 12.0, 35.0, 50.0] {
            let q = potential_ft(&l, p, &cfg()).unwrap();
            let a = l.analytic_ft(p).unwrap().unwrap().value;
            assert_relative_eq!(q.value, a, max_relative = 1e-9);
        }
    }
}

//! Asymptotic photoionization cross sections.
//!
//! All evaluators work in natural units (`ħ = c = 1`, explicit mass `m`) and
//! use `p = √(2 m ω)` for the outgoing momentum.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundstate::BoundState;
use crate::error::{finite, positive, Error, Result};
use crate::potentials::{PotentialSpec, SingularityCategory};
use crate::radialft::{best_ft, ft_wavefunction, FtConfig};
use crate::units::ALPHA_FS;

/// Photons below this multiple of the ionization potential are outside the
/// asymptotic regime.
pub const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Couplings {
    pub alpha_fs: f64,
    pub m: f64,
    pub k_electrons: u32,
}

impl Default for Couplings {
    fn default() -> Self {
        Couplings {
            alpha_fs: ALPHA_FS,
            m: 1.0,
            k_electrons: 1,
        }
    }
}

impl Couplings {
    pub fn new(alpha_fs: f64, m: f64, k_electrons: u32) -> Result<Self> {
        let c = Couplings {
            alpha_fs,
            m,
            k_electrons,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        positive("alpha_fs", self.alpha_fs)?;
        positive("m", self.m)?;
        if self.k_electrons == 0 {
            return Err(Error::InvalidParameter {
                name: "k_electrons",
                reason: "must be >= 1".into(),
            });
        }
        Ok(())
    }

    pub fn momentum(&self, omega: f64) -> f64 {
        (2.0 * self.m * omega).sqrt()
    }

    fn prefactor(&self) -> f64 {
        self.k_electrons as f64 * 4.0 * self.alpha_fs / 3.0
    }
}

/// Which expression produced a cross section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// `k (4α/3)(p/ω²)|V(p)|² ψ(0)²`
    Master,
    /// `(4αp/3)|ψ(p)|²`
    Amplitude,
    CoulombLike,
    CoulombStobbe,
    Bubble,
    Well,
    Lorentzian,
    PoschlTeller,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XsecPoint {
    pub omega: f64,
    pub p: f64,
    pub sigma: f64,
    pub formula: Formula,
}

fn point(omega: f64, c: &Couplings, sigma: f64, formula: Formula) -> Result<XsecPoint> {
    positive("omega", omega)?;
    c.validate()?;
    Ok(XsecPoint {
        omega,
        p: c.momentum(omega),
        sigma,
        formula,
    })
}

pub fn sigma_master(vp: f64, psi0: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    finite("vp", vp)?;
    finite("psi0", psi0)?;
    let p = c.momentum(omega);
    let sigma = c.prefactor() * p / (omega * omega) * vp * vp * psi0 * psi0;
    point(omega, c, sigma, Formula::Master)
}

pub fn sigma_from_psip(psip: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    finite("psip", psip)?;
    let p = c.momentum(omega);
    point(omega, c, c.prefactor() * p * psip * psip, Formula::Amplitude)
}

/// Cross-section and amplitude factors from the leading final-state
/// correction, `(1 - πξ/2, 1 - πξ)`. The exponential [`stobbe_factor`]
/// resums this series and should be preferred when `πξ` is not small.
pub fn fb_correction_factor(xi: f64) -> Result<(f64, f64)> {
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "xi",
            reason: format!("must be >= 0, got {xi}"),
        });
    }
    Ok((1.0 - PI * xi / 2.0, 1.0 - PI * xi))
}

pub fn stobbe_factor(xi: f64) -> f64 {
    (-PI * xi).exp()
}

/// Closed form for a `-g/r` pole, optionally times `exp(-π m g / p)`.
pub fn sigma_coulomb_like(g: f64, psi0sq: f64, omega: f64, c: &Couplings, stobbe: bool) -> Result<XsecPoint> {
    finite("g", g)?;
    positive("omega", omega)?;
    c.validate()?;
    let m = c.m;
    let mut sigma = c.k_electrons as f64 * 16.0 * 2f64.sqrt() * PI * PI * c.alpha_fs * g * g * psi0sq
        / (3.0 * m.powf(1.5) * omega.powf(3.5));
    let mut formula = Formula::CoulombLike;
    if stobbe {
        sigma *= stobbe_factor(m * g / c.momentum(omega));
        formula = Formula::CoulombStobbe;
    }
    point(omega, c, sigma, formula)
}

pub fn sigma_bubble(v0: f64, r: f64, psi0sq: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    let (m, p) = (c.m, c.momentum(omega));
    let s = (p * r).sin();
    let sigma = c.k_electrons as f64 * 256.0 / 3.0 * c.alpha_fs * PI * PI * v0 * v0 * m * m * r * r * s * s * psi0sq
        / p.powi(5);
    point(omega, c, sigma, Formula::Bubble)
}

/// Leading large-`p` form; vanishes at the nodes of `cos(pR)`.
pub fn sigma_well(v0: f64, r: f64, psi0sq: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    let (m, p) = (c.m, c.momentum(omega));
    let cs = (p * r).cos();
    let sigma = c.k_electrons as f64 * 128.0 * c.alpha_fs * PI * PI * v0 * v0 * r * r * m * cs * cs * psi0sq
        / (3.0 * omega * p.powi(5));
    point(omega, c, sigma, Formula::Well)
}

pub fn sigma_lorentzian(v0: f64, a: f64, psi0sq: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    let (m, p) = (c.m, c.momentum(omega));
    let sigma = c.k_electrons as f64 * 64.0 * PI * PI / 3.0
        * c.alpha_fs
        * v0
        * v0
        * m
        * m
        * a
        * a
        * (-2.0 * p * a).exp()
        * psi0sq
        / p.powi(5);
    point(omega, c, sigma, Formula::Lorentzian)
}

pub fn sigma_pt(v0: f64, kappa: f64, psi0sq: f64, omega: f64, c: &Couplings) -> Result<XsecPoint> {
    let p = c.momentum(omega);
    let sigma = c.k_electrons as f64 * 4.0 * c.alpha_fs * PI.powi(6) * v0 * v0 / (3.0 * kappa.powi(6)) * p
        / (omega * omega)
        * (-PI * p / kappa).exp()
        * psi0sq;
    point(omega, c, sigma, Formula::PoschlTeller)
}

/// Specialized closed form for a catalog potential, if one exists.
///
/// Yukawa and Tietz use the Coulomb-like form with their pole strength,
/// which they approach from below as `ω` grows.
pub fn sigma_closed(
    spec: &PotentialSpec,
    psi0sq: f64,
    omega: f64,
    c: &Couplings,
    stobbe: bool,
) -> Result<Option<XsecPoint>> {
    use PotentialSpec as P;
    if stobbe && spec.coulomb_strength().is_none() {
        return Err(Error::Domain(format!(
            "the Stobbe factor needs a Coulomb pole, {} has none",
            spec.kind_name()
        )));
    }
    let pt = match spec {
        P::Coulomb(_) | P::Yukawa(_) | P::TietzTf(_) => {
            let g = spec.coulomb_strength().expect("pole potential");
            sigma_coulomb_like(g, psi0sq, omega, c, stobbe)?
        }
        P::DiracBubble(b) => sigma_bubble(b.v0, b.r, psi0sq, omega, c)?,
        P::RectWell(w) => sigma_well(w.v0, w.r, psi0sq, omega, c)?,
        P::Lorentzian(l) => sigma_lorentzian(l.v0, l.a, psi0sq, omega, c)?,
        P::PoschlTeller(t) => sigma_pt(t.v0, t.kappa, psi0sq, omega, c)?,
        P::Tabulated(_) => return Ok(None),
    };
    Ok(Some(pt))
}

/// Master formula with the best available transform of `spec`.
pub fn sigma_for(spec: &PotentialSpec, psi0: f64, omega: f64, c: &Couplings, cfg: &FtConfig) -> Result<XsecPoint> {
    positive("omega", omega)?;
    let vp = best_ft(spec, c.momentum(omega), cfg)?.value;
    sigma_master(vp, psi0, omega, c)
}

/// `σ(ω₁)/σ(ω₂) = (ω₂/ω₁)^{3/2} |V(p₁)|²/|V(p₂)|²`.
pub fn ratio_law(omega1: f64, omega2: f64, spec: &PotentialSpec, c: &Couplings, cfg: &FtConfig) -> Result<f64> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    let v1 = best_ft(spec, c.momentum(omega1), cfg)?.value;
    let v2 = best_ft(spec, c.momentum(omega2), cfg)?.value;
    Ok((omega2 / omega1).powf(1.5) * (v1 * v1) / (v2 * v2))
}

/// `ψ(p) p² / (-2m V(p) ψ(0))` for a solved state; tends to 1 at large `p`.
pub fn asymptotic_psi_ratio(bs: &BoundState, spec: &PotentialSpec, p: f64, cfg: &FtConfig) -> Result<f64> {
    if !(p >= 5.0 * bs.mu) {
        return Err(Error::Domain(format!("p = {p} is below 5μ = {}", 5.0 * bs.mu)));
    }
    let psi = ft_wavefunction(bs, p, cfg)?.value;
    let vp = best_ft(spec, p, cfg)?.value;
    Ok(psi * p * p / (-2.0 * bs.mass * vp * bs.psi0))
}

/// Refuses `ω < 10 I` unless `force` is set.
pub fn asymptotic_gate(omega: f64, ionization: f64, force: bool) -> Result<()> {
    let threshold = ASYMPTOTIC_THRESHOLD * ionization;
    if omega < threshold && !force {
        return Err(Error::BelowAsymptoticRegime { omega, threshold });
    }
    Ok(())
}

/// Evaluates `f` on every `ω` in parallel, keeping input order.
pub fn sweep<F>(omegas: &[f64], f: F) -> Result<Vec<XsecPoint>>
where
    F: Fn(f64) -> Result<XsecPoint> + Sync,
{
    omegas.par_iter().map(|&w| f(w)).collect()
}

/// `n` log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// True for potentials whose leading correction is the Coulomb final-state
/// interaction (those the Stobbe factor applies to).
pub fn has_coulomb_pole(spec: &PotentialSpec) -> bool {
    matches!(
        spec.classify().map(|c| c.category),
        Ok(SingularityCategory::CoulombPoleAtOrigin)
    )
}

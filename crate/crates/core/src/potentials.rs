//! Catalog of central potentials: pointwise evaluation, closed-form radial
//! Fourier transforms and the mapping from analytic structure to the
//! large-momentum tail of the cross section.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, positive, Error, Result};
use crate::radialft::{FtMethod, FtResult, RadialFunction};
use crate::units::ALPHA_FS;

/// Pure Coulomb field `-g/r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoulombParams {
    pub g: f64,
}

/// Screened Coulomb field `-g e^{-λ r}/r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YukawaParams {
    pub g: f64,
    pub lambda: f64,
}

/// Spherical delta shell `V0 δ(r - R)`; `v0` carries energy × length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleParams {
    #[serde(alias = "V0")]
    pub v0: f64,
    #[serde(alias = "R")]
    pub r: f64,
}

/// Rectangular well `V0` for `r < R`, zero outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WellParams {
    #[serde(alias = "V0")]
    pub v0: f64,
    #[serde(alias = "R")]
    pub r: f64,
}

/// Tietz form of the Thomas–Fermi atomic field,
/// `-(αZ/r) / (1 + a r / r0)²` with `a = c Z^{1/3}` and `r0 = 1/(m α)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TietzParams {
    #[serde(alias = "Z")]
    pub z: f64,
    #[serde(default = "default_tietz_c")]
    pub c: f64,
    #[serde(default = "default_alpha")]
    pub alpha_fs: f64,
    #[serde(default = "default_mass")]
    pub m: f64,
}

/// `(V0/π) a / (r² + a²)`, a smeared delta with poles at `r = ±ia`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzianParams {
    #[serde(alias = "V0")]
    pub v0: f64,
    pub a: f64,
}

/// Modified Pöschl–Teller well `V0 / cosh²(κ r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoschlTellerParams {
    #[serde(alias = "V0")]
    pub v0: f64,
    pub kappa: f64,
}

/// Potential sampled on a grid; monotone cubic inside, zero beyond the last
/// point and held at the first value below the first point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TabulatedParams {
    pub r: Vec<f64>,
    #[serde(alias = "V")]
    pub v: Vec<f64>,
}

fn default_tietz_c() -> f64 {
    0.6
}
fn default_alpha() -> f64 {
    ALPHA_FS
}
fn default_mass() -> f64 {
    1.0
}

/// A central potential. Serialized as `{"kind": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialSpec {
    Coulomb(CoulombParams),
    Yukawa(YukawaParams),
    #[serde(alias = "diracbubble", alias = "dirac_bubble", alias = "bubble")]
    DiracBubble(BubbleParams),
    #[serde(alias = "rectwell", alias = "rect_well", alias = "well")]
    RectWell(WellParams),
    #[serde(rename = "tietz", alias = "tietztf", alias = "tietz-tf", alias = "tietz_tf")]
    TietzTf(TietzParams),
    Lorentzian(LorentzianParams),
    #[serde(alias = "poschlteller", alias = "poschl_teller")]
    PoschlTeller(PoschlTellerParams),
    Tabulated(TabulatedParams),
}

/// Where the analytic structure of `V(r)` lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "category", rename_all = "snake_case")]
pub enum SingularityCategory {
    CoulombPoleAtOrigin,
    /// `jump_order` is the lowest derivative of the bound-state function
    /// that is discontinuous at `r`: 1 for a delta shell, 2 for a step.
    RealAxisJump {
        r: f64,
        jump_order: u32,
    },
    ComplexPlane {
        im_distance: f64,
    },
    SmoothDecaying,
}

/// Predicted large-energy behaviour of σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum TailLaw {
    /// σ ∝ ω^exponent
    Power { exponent: f64 },
    /// σ ∝ (power of p) · e^{-rate · p}
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityClass {
    pub category: SingularityCategory,
    pub predicted_sigma_tail: TailLaw,
}

/// Leading behaviour of a potential at the origin:
/// `V(r) ≈ -pole/r + v0 + v1 r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginSeries {
    pub pole: f64,
    pub v0: f64,
    pub v1: f64,
}

/// Non-smooth point of a potential at finite radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interface {
    /// `strength · δ(r - r)`
    Delta { r: f64, strength: f64 },
    /// Step from `inside` (r < R) to `outside` (r > R).
    Step { r: f64, inside: f64, outside: f64 },
}

impl Interface {
    pub fn radius(&self) -> f64 {
        match *self {
            Interface::Delta { r, .. } | Interface::Step { r, .. } => r,
        }
    }
}

/// Names of all catalog kinds, in listing order.
pub const CATALOG: [&str; 7] = [
    "coulomb",
    "yukawa",
    "dirac-bubble",
    "rect-well",
    "tietz",
    "lorentzian",
    "poschl-teller",
];

impl PotentialSpec {
    pub fn coulomb(g: f64) -> Result<Self> {
        Self::Coulomb(CoulombParams { g }).validated()
    }

    pub fn yukawa(g: f64, lambda: f64) -> Result<Self> {
        Self::Yukawa(YukawaParams { g, lambda }).validated()
    }

    pub fn dirac_bubble(v0: f64, r: f64) -> Result<Self> {
        Self::DiracBubble(BubbleParams { v0, r }).validated()
    }

    pub fn rect_well(v0: f64, r: f64) -> Result<Self> {
        Self::RectWell(WellParams { v0, r }).validated()
    }

    /// Tietz field with the default fine-structure constant and `m = 1`.
    pub fn tietz(z: f64, c: f64) -> Result<Self> {
        Self::TietzTf(TietzParams {
            z,
            c,
            alpha_fs: ALPHA_FS,
            m: 1.0,
        })
        .validated()
    }

    pub fn lorentzian(v0: f64, a: f64) -> Result<Self> {
        Self::Lorentzian(LorentzianParams { v0, a }).validated()
    }

    pub fn poschl_teller(v0: f64, kappa: f64) -> Result<Self> {
        Self::PoschlTeller(PoschlTellerParams { v0, kappa }).validated()
    }

    pub fn tabulated(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        Self::Tabulated(TabulatedParams { r, v }).validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks parameter domains. Signs of well depths are not checked here;
    /// see [`PotentialSpec::check_binding`].
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Coulomb(p) => finite("g", p.g),
            Self::Yukawa(p) => {
                finite("g", p.g)?;
                positive("lambda", p.lambda)
            }
            Self::DiracBubble(p) => {
                finite("v0", p.v0)?;
                positive("r", p.r)
            }
            Self::RectWell(p) => {
                finite("v0", p.v0)?;
                positive("r", p.r)
            }
            Self::TietzTf(p) => {
                positive("z", p.z)?;
                positive("c", p.c)?;
                positive("alpha_fs", p.alpha_fs)?;
                positive("m", p.m)
            }
            Self::Lorentzian(p) => {
                finite("v0", p.v0)?;
                positive("a", p.a)
            }
            Self::PoschlTeller(p) => {
                finite("v0", p.v0)?;
                positive("kappa", p.kappa)
            }
            Self::Tabulated(t) => {
                if t.r.len() != t.v.len() {
                    return Err(Error::InvalidParameter {
                        name: "v",
                        reason: format!("{} values for {} radii", t.v.len(), t.r.len()),
                    });
                }
                if t.r.len() < 2 {
                    return Err(Error::InvalidParameter {
                        name: "r",
                        reason: "need at least two grid points".into(),
                    });
                }
                if t.r[0] < 0.0 || t.r.iter().chain(&t.v).any(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "r",
                        reason: "grid must be finite and non-negative".into(),
                    });
                }
                if t.r.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidParameter {
                        name: "r",
                        reason: "grid must be strictly increasing".into(),
                    });
                }
                Ok(())
            }
        }
    }

    /// Sign requirements for a bound state to exist at all.
    pub fn check_binding(&self) -> Result<()> {
        let attractive = |name: &'static str, v: f64| {
            if v < 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be negative for a bound state, got {v}"),
                })
            }
        };
        match self {
            Self::Coulomb(p) => attractive("g", -p.g),
            Self::Yukawa(p) => attractive("g", -p.g),
            Self::DiracBubble(p) => attractive("v0", p.v0),
            Self::RectWell(p) => attractive("v0", p.v0),
            Self::TietzTf(_) => Ok(()),
            Self::Lorentzian(p) => attractive("v0", p.v0),
            Self::PoschlTeller(p) => attractive("v0", p.v0),
            Self::Tabulated(t) => {
                let min = t.v.iter().copied().fold(f64::INFINITY, f64::min);
                attractive("v", min)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Coulomb(_) => "coulomb",
            Self::Yukawa(_) => "yukawa",
            Self::DiracBubble(_) => "dirac-bubble",
            Self::RectWell(_) => "rect-well",
            Self::TietzTf(_) => "tietz",
            Self::Lorentzian(_) => "lorentzian",
            Self::PoschlTeller(_) => "poschl-teller",
            Self::Tabulated(_) => "tabulated",
        }
    }

    /// Parameter names accepted in the JSON `params` object.
    pub fn param_names(kind: &str) -> Option<&'static [&'static str]> {
        Some(match kind {
            "coulomb" => &["g"],
            "yukawa" => &["g", "lambda"],
            "dirac-bubble" | "rect-well" => &["v0", "r"],
            "tietz" => &["z", "c", "alpha_fs", "m"],
            "lorentzian" => &["v0", "a"],
            "poschl-teller" => &["v0", "kappa"],
            "tabulated" => &["r", "v"],
            _ => return None,
        })
    }

    /// Strength `g` of the `-g/r` pole at the origin, if there is one.
    pub fn coulomb_strength(&self) -> Option<f64> {
        match self {
            Self::Coulomb(p) => Some(p.g),
            Self::Yukawa(p) => Some(p.g),
            Self::TietzTf(p) => Some(p.alpha_fs * p.z),
            _ => None,
        }
    }

    /// Screening length `b = r0 / a` of the Tietz field.
    pub fn tietz_b(p: &TietzParams) -> f64 {
        let a = p.c * p.z.cbrt();
        let r0 = 1.0 / (p.m * p.alpha_fs);
        r0 / a
    }

    /// Pointwise `V(r)` for `r > 0`.
    pub fn eval_r(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be > 0, got {r}")));
        }
        if let Self::DiracBubble(_) = self {
            return Err(Error::NotPointwise);
        }
        Ok(self.value_at(r))
    }

    /// Unchecked evaluation; NaN for the delta shell.
    pub(crate) fn value_at(&self, r: f64) -> f64 {
        match self {
            Self::Coulomb(p) => -p.g / r,
            Self::Yukawa(p) => -p.g * (-p.lambda * r).exp() / r,
            Self::DiracBubble(_) => f64::NAN,
            Self::RectWell(p) => {
                if r < p.r {
                    p.v0
                } else {
                    0.0
                }
            }
            Self::TietzTf(p) => {
                let s = 1.0 + r / Self::tietz_b(p);
                -p.alpha_fs * p.z / (r * s * s)
            }
            Self::Lorentzian(p) => p.v0 / PI * p.a / (r * r + p.a * p.a),
            Self::PoschlTeller(p) => {
                let c = (p.kappa * r).cosh();
                p.v0 / (c * c)
            }
            Self::Tabulated(t) => pchip_eval(&t.r, &t.v, r),
        }
    }

    /// `r V(r)`, finite at the origin for Coulomb-pole potentials.
    pub(crate) fn weighted_at(&self, r: f64) -> f64 {
        match self {
            Self::Coulomb(p) => -p.g,
            Self::Yukawa(p) => -p.g * (-p.lambda * r).exp(),
            Self::TietzTf(p) => {
                let s = 1.0 + r / Self::tietz_b(p);
                -p.alpha_fs * p.z / (s * s)
            }
            _ => r * self.value_at(r),
        }
    }

    /// Exact closed-form transform `V(p) = ∫ d³r V(r) e^{-i p·r}`.
    ///
    /// `None` for the Tietz and tabulated fields, which go through
    /// quadrature. The Pöschl–Teller entry is the large-`p` exponential form
    /// and carries [`FtMethod::Asymptotic`].
    pub fn analytic_ft(&self, p: f64) -> Result<Option<FtResult>> {
        positive("p", p)?;
        let (value, method) = match self {
            Self::Coulomb(c) => (-4.0 * PI * c.g / (p * p), FtMethod::Analytic),
            Self::Yukawa(y) => (-4.0 * PI * y.g / (p * p + y.lambda * y.lambda), FtMethod::Analytic),
            Self::DiracBubble(b) => (4.0 * PI * b.v0 * b.r * (p * b.r).sin() / p, FtMethod::Analytic),
            Self::RectWell(w) => {
                let x = p * w.r;
                let v = -4.0 * PI * w.v0 * w.r.powi(3) * x_cos_minus_sin(x) / (x * x * x);
                (v, FtMethod::Analytic)
            }
            Self::Lorentzian(l) => (2.0 * PI * l.v0 * l.a * (-p * l.a).exp() / p, FtMethod::Analytic),
            Self::PoschlTeller(t) => (pt_exponential_form(t, p), FtMethod::Asymptotic),
            Self::TietzTf(_) | Self::Tabulated(_) => return Ok(None),
        };
        Ok(Some(FtResult {
            value,
            err_estimate: 0.0,
            method,
            half_periods_used: 0,
        }))
    }

    /// Leading large-`p` term of `V(p)`; for the Coulomb-pole family this is
    /// the bare Coulomb transform, for the well the cosine term.
    pub fn asymptotic_ft(&self, p: f64) -> Result<f64> {
        positive("p", p)?;
        if let Some(g) = self.coulomb_strength() {
            return Ok(-4.0 * PI * g / (p * p));
        }
        match self {
            Self::RectWell(w) => Ok(-4.0 * PI * w.v0 * w.r * (p * w.r).cos() / (p * p)),
            Self::PoschlTeller(t) => Ok(pt_exponential_form(t, p)),
            Self::Tabulated(_) => Err(Error::NotClassifiable),
            _ => Ok(self.analytic_ft(p)?.expect("closed form exists").value),
        }
    }

    pub fn classify(&self) -> Result<SingularityClass> {
        use SingularityCategory::*;
        let coulomb_like = SingularityClass {
            category: CoulombPoleAtOrigin,
            predicted_sigma_tail: TailLaw::Power { exponent: -3.5 },
        };
        Ok(match self {
            Self::Coulomb(_) | Self::Yukawa(_) | Self::TietzTf(_) => coulomb_like,
            Self::DiracBubble(b) => SingularityClass {
                category: RealAxisJump { r: b.r, jump_order: 1 },
                predicted_sigma_tail: TailLaw::Power { exponent: -2.5 },
            },
            Self::RectWell(w) => SingularityClass {
                category: RealAxisJump { r: w.r, jump_order: 2 },
                predicted_sigma_tail: TailLaw::Power { exponent: -3.5 },
            },
            Self::Lorentzian(l) => SingularityClass {
                category: ComplexPlane { im_distance: l.a },
                predicted_sigma_tail: TailLaw::Exponential { rate: 2.0 * l.a },
            },
            Self::PoschlTeller(t) => {
                let d = PI / (2.0 * t.kappa);
                SingularityClass {
                    category: ComplexPlane { im_distance: d },
                    predicted_sigma_tail: TailLaw::Exponential { rate: 2.0 * d },
                }
            }
            Self::Tabulated(_) => return Err(Error::NotClassifiable),
        })
    }

    pub fn origin_series(&self) -> OriginSeries {
        let regular = |v0| OriginSeries { pole: 0.0, v0, v1: 0.0 };
        match self {
            Self::Coulomb(p) => OriginSeries {
                pole: p.g,
                v0: 0.0,
                v1: 0.0,
            },
            Self::Yukawa(p) => OriginSeries {
                pole: p.g,
                v0: p.g * p.lambda,
                v1: -0.5 * p.g * p.lambda * p.lambda,
            },
            Self::TietzTf(p) => {
                let g = p.alpha_fs * p.z;
                let b = Self::tietz_b(p);
                OriginSeries {
                    pole: g,
                    v0: 2.0 * g / b,
                    v1: -3.0 * g / (b * b),
                }
            }
            Self::DiracBubble(_) => regular(0.0),
            Self::RectWell(p) => regular(p.v0),
            Self::Lorentzian(p) => regular(p.v0 / (PI * p.a)),
            Self::PoschlTeller(p) => regular(p.v0),
            Self::Tabulated(t) => regular(t.v[0]),
        }
    }

    pub fn interface(&self) -> Option<Interface> {
        match self {
            Self::DiracBubble(b) => Some(Interface::Delta { r: b.r, strength: b.v0 }),
            Self::RectWell(w) => Some(Interface::Step {
                r: w.r,
                inside: w.v0,
                outside: 0.0,
            }),
            _ => None,
        }
    }

    /// Smooth part of the potential on the solver grid (the delta shell
    /// contributes nothing away from its radius).
    pub(crate) fn smooth_value_at(&self, r: f64) -> f64 {
        match self {
            Self::DiracBubble(_) => 0.0,
            _ => self.value_at(r),
        }
    }

    /// Natural length of the potential, used to size solver boxes.
    pub fn length_scale(&self, m: f64) -> f64 {
        if let Some(g) = self.coulomb_strength() {
            return 1.0 / (m * g.abs());
        }
        match self {
            Self::DiracBubble(b) => b.r.max(1.0 / (m * b.v0.abs())),
            Self::RectWell(w) => w.r,
            Self::Lorentzian(l) => l.a,
            Self::PoschlTeller(t) => 1.0 / t.kappa,
            Self::Tabulated(t) => *t.r.last().expect("validated"),
            _ => unreachable!(),
        }
    }

    /// A strict lower bound on any bound-state energy.
    pub fn energy_lower_bound(&self, m: f64) -> f64 {
        if let Some(g) = self.coulomb_strength() {
            // every pole potential here satisfies V(r) >= -g/r
            return -0.5 * m * g * g;
        }
        match self {
            Self::DiracBubble(b) => -0.5 * m * b.v0 * b.v0,
            Self::RectWell(w) => w.v0,
            Self::Lorentzian(l) => l.v0 / (PI * l.a),
            Self::PoschlTeller(t) => t.v0,
            Self::Tabulated(t) => t.v.iter().copied().fold(0.0, f64::min),
            _ => unreachable!(),
        }
    }
}

impl RadialFunction for PotentialSpec {
    fn value(&self, r: f64) -> f64 {
        self.value_at(r)
    }

    fn weighted(&self, r: f64) -> f64 {
        self.weighted_at(r)
    }

    fn support(&self) -> Option<f64> {
        match self {
            Self::RectWell(w) => Some(w.r),
            Self::Tabulated(t) => t.r.last().copied(),
            _ => None,
        }
    }

    fn analytic_strip(&self) -> Option<f64> {
        match self {
            Self::Lorentzian(l) => Some(l.a),
            Self::PoschlTeller(t) => Some(PI / (2.0 * t.kappa)),
            _ => None,
        }
    }

    fn weighted_complex(&self, z: Complex64) -> Option<Complex64> {
        match self {
            Self::Lorentzian(l) => Some(z * l.v0 * l.a / (PI * (z * z + l.a * l.a))),
            Self::PoschlTeller(t) => {
                let c = (z * t.kappa).cosh();
                Some(z * t.v0 / (c * c))
            }
            _ => None,
        }
    }
}

fn pt_exponential_form(t: &PoschlTellerParams, p: f64) -> f64 {
    PI.powi(3) * t.v0 / t.kappa.powi(3) * (-PI * p / (2.0 * t.kappa)).exp()
}

/// `x cos x − sin x`, with the cancellation near zero handled by series.
fn x_cos_minus_sin(x: f64) -> f64 {
    if x.abs() >= 0.5 {
        return x * x.cos() - x.sin();
    }
    // Σ_{n≥1} (−1)^n 2n x^{2n+1} / (2n+1)!
    let x2 = x * x;
    let mut pow_fact = x; // x^{2n+1}/(2n+1)!
    let mut sum = 0.0;
    for n in 1..20 {
        let k = 2 * n;
        pow_fact *= x2 / ((k * (k + 1)) as f64);
        let term = pow_fact * k as f64;
        sum += if n % 2 == 1 { -term } else { term };
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Monotone piecewise-cubic (Fritsch–Carlson) interpolation.
fn pchip_eval(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x < xs[0] {
        return ys[0];
    }
    if x > xs[n - 1] {
        return 0.0;
    }
    let i = match xs.partition_point(|&xi| xi <= x) {
        0 => 0,
        k if k >= n => n - 2,
        k => k - 1,
    };
    let h = xs[i + 1] - xs[i];
    let t = (x - xs[i]) / h;
    let (d0, d1) = (pchip_slope(xs, ys, i), pchip_slope(xs, ys, i + 1));
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * ys[i] + h10 * h * d0 + h01 * ys[i + 1] + h11 * h * d1
}

fn pchip_slope(xs: &[f64], ys: &[f64], i: usize) -> f64 {
    let n = xs.len();
    let delta = |k: usize| (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
    if n == 2 {
        return delta(0);
    }
    let end_slope = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if d.signum() != d0.signum() {
            0.0
        } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            d
        }
    };
    if i == 0 {
        return end_slope(xs[1] - xs[0], xs[2] - xs[1], delta(0), delta(1));
    }
    if i == n - 1 {
        return end_slope(xs[n - 1] - xs[n - 2], xs[n - 2] - xs[n - 3], delta(n - 2), delta(n - 3));
    }
    let (d0, d1) = (delta(i - 1), delta(i));
    if d0 * d1 <= 0.0 {
        return 0.0;
    }
    let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
    let w1 = 2.0 * h1 + h0;
    let w2 = h1 + 2.0 * h0;
    (w1 + w2) / (w1 / d0 + w2 / d1)
}

//! Ground s-state of `(-Δ/2m + V) ψ = ε ψ` on a uniform radial grid.
//!
//! The reduced function `u = r ψ` obeys `u'' = 2m (V - ε) u`, integrated with
//! Numerov's method. Outward integration starts from the Frobenius series at
//! the origin (so Coulomb poles are handled exactly), inward integration
//! starts from the decaying exponential. The ground-state energy is first
//! bracketed by Sturm node counting and then polished on the two-sided
//! matching mismatch.
//!
//! A delta shell enters through the jump `u'(R+) - u'(R-) = 2m V0 u(R)`
//! imposed at a grid node; a step in `V` enters through the matching
//! `u'''` correction at its node. Both keep the scheme fourth order.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::potentials::{Interface, OriginSeries, PotentialSpec, SingularityCategory};
use crate::radialft::RadialFunction;

/// Box radius in units of the decay length `1/μ`.
const BOX_DECAY_LENGTHS: f64 = 30.0;
const DEFAULT_GRID: usize = 20_000;
const MAX_AUTO_GRID: usize = 400_000;
const COARSE_GRID: usize = 4_000;
/// Interfaces and the match point must stay this many steps from the ends.
const EDGE_STEPS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub r_max: f64,
    pub n_grid: usize,
    pub energy_bracket: (f64, f64),
    pub tol_energy: f64,
    pub match_radius_fraction: f64,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        positive("r_max", self.r_max)?;
        positive("tol_energy", self.tol_energy)?;
        if self.n_grid < 1000 {
            return Err(Error::InvalidParameter {
                name: "n_grid",
                reason: format!("must be >= 1000, got {}", self.n_grid),
            });
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi && hi < 0.0) {
            return Err(Error::InvalidParameter {
                name: "energy_bracket",
                reason: format!("need E_lo < E_hi < 0, got ({lo}, {hi})"),
            });
        }
        if !(self.match_radius_fraction > 0.0 && self.match_radius_fraction < 1.0) {
            return Err(Error::InvalidParameter {
                name: "match_radius_fraction",
                reason: "must lie in (0, 1)".into(),
            });
        }
        Ok(())
    }

    /// Default bracket for `spec`: from just below the potential's lower
    /// bound up to a hair below threshold.
    pub fn default_bracket(spec: &PotentialSpec, m: f64) -> Result<(f64, f64)> {
        let lower = spec.energy_lower_bound(m);
        if !(lower < 0.0) {
            return Err(Error::NoBoundState);
        }
        Ok((1.05 * lower, -1e-9 * lower.abs()))
    }

    /// Sizes the box as `30/μ` from a coarse pre-solve.
    pub fn auto(spec: &PotentialSpec, m: f64) -> Result<Self> {
        positive("m", m)?;
        spec.check_binding()?;
        let bracket = Self::default_bracket(spec, m)?;
        let scale = spec.length_scale(m);
        let min_box = spec.interface().map(|i| 1.5 * i.radius()).unwrap_or(0.0);
        let mut r_max = (40.0 * scale).max(min_box);
        let mut enlargements = 0;
        let mu = loop {
            let coarse = SolverConfig {
                r_max,
                n_grid: ((20.0 * r_max / scale).ceil() as usize).clamp(COARSE_GRID, MAX_AUTO_GRID),
                energy_bracket: bracket,
                tol_energy: 1e-6,
                match_radius_fraction: 0.3,
            };
            match Shooter::new(spec, m, &coarse).and_then(|s| s.bracket_ground(1e-6)) {
                Ok((lo, _)) => {
                    let mu = (2.0 * m * -lo).sqrt();
                    let need = BOX_DECAY_LENGTHS / mu;
                    if need <= 1.05 * r_max || enlargements >= 6 {
                        break mu;
                    }
                    r_max = 1.5 * need;
                }
                Err(Error::NoBoundState) if enlargements < 3 => r_max *= 8.0,
                Err(e) => return Err(e),
            }
            enlargements += 1;
        };
        let r_max = (BOX_DECAY_LENGTHS / mu).max(min_box);
        let n_grid = ((100.0 * r_max / scale).ceil() as usize).clamp(DEFAULT_GRID, MAX_AUTO_GRID);
        Ok(SolverConfig {
            r_max,
            n_grid,
            energy_bracket: bracket,
            tol_energy: 1e-10,
            match_radius_fraction: 0.3,
        })
    }
}

/// Normalized ground state, `4π ∫ u² dr = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    /// `√(2 m I)` with `I = -energy`.
    pub mu: f64,
    pub psi0: f64,
    pub psi0_prime: f64,
    pub mass: f64,
    pub step: f64,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    /// Radii of grid nodes carrying a delta shell or a step.
    pub interfaces: Vec<f64>,
    pub norm_check: f64,
}

impl BoundState {
    pub fn ionization_potential(&self) -> f64 {
        -self.energy
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().expect("non-empty grid")
    }

    fn last_index(&self) -> usize {
        self.u.len() - 1
    }

    fn interface_nodes(&self) -> Vec<usize> {
        self.interfaces
            .iter()
            .map(|r| (r / self.step).round() as usize)
            .collect()
    }

    /// `ψ` at grid node `i`.
    fn psi_node(&self, i: usize) -> f64 {
        if i == 0 {
            self.psi0
        } else {
            self.u[i] / self.r[i]
        }
    }

    /// Grid function continued between nodes by local sixth-order
    /// interpolation that never straddles an interface.
    pub fn interpolant(&self) -> GridInterpolant<'_> {
        let mut bounds = vec![0];
        bounds.extend(self.interface_nodes());
        bounds.push(self.last_index());
        GridInterpolant { bs: self, bounds }
    }

    /// `⟨H⟩` recomputed from the stored `u`.
    pub fn energy_expectation(&self, spec: &PotentialSpec) -> f64 {
        let h = self.step;
        let mut bounds = vec![0];
        let nodes = self.interface_nodes();
        bounds.extend(&nodes);
        bounds.push(self.last_index());
        let mut kinetic = 0.0;
        let mut potential = 0.0;
        for seg in bounds.windows(2) {
            let (lo, hi) = (seg[0], seg[1]);
            let du: Vec<f64> = (lo..=hi)
                .map(|i| derivative_in_segment(&self.u, h, lo, hi, i))
                .collect();
            let du2: Vec<f64> = du.iter().map(|d| d * d).collect();
            kinetic += simpson(&du2, h);
            let vu2: Vec<f64> = (lo..=hi)
                .map(|i| {
                    if i == 0 {
                        // V u² → -pole·u(r)²/r → 0
                        return 0.0;
                    }
                    let r = self.r[i];
                    // evaluate just inside the segment at its ends
                    let r_eval = if i == lo {
                        r * (1.0 + 1e-12)
                    } else if i == hi {
                        r * (1.0 - 1e-12)
                    } else {
                        r
                    };
                    let v = spec.smooth_value_at(r_eval);
                    v * self.u[i] * self.u[i]
                })
                .collect();
            potential += simpson(&vu2, h);
        }
        let mut delta = 0.0;
        if let Some(Interface::Delta { strength, .. }) = spec.interface() {
            for &j in &nodes {
                delta += strength * self.u[j] * self.u[j];
            }
        }
        4.0 * std::f64::consts::PI * (kinetic / (2.0 * self.mass) + potential + delta)
    }
}

/// The solved `u(r)` as a [`RadialFunction`] with bounded support.
pub struct GridInterpolant<'a> {
    bs: &'a BoundState,
    /// Segment end nodes: 0, interfaces…, N.
    bounds: Vec<usize>,
}

impl GridInterpolant<'_> {
    pub fn u_at(&self, r: f64) -> f64 {
        let h = self.bs.step;
        let n = self.bs.last_index();
        if r <= 0.0 {
            return 0.0;
        }
        if r >= self.bs.r[n] {
            return self.bs.u[n];
        }
        let x = r / h;
        let i = (x.floor() as usize).min(n - 1);
        let seg = self.bounds.partition_point(|&b| b <= i).clamp(1, self.bounds.len() - 1);
        let (lo, hi) = (self.bounds[seg - 1], self.bounds[seg]);
        let start = i.saturating_sub(2).max(lo).min(hi.saturating_sub(5)).max(lo);
        let t = x - start as f64;
        let ys = &self.bs.u[start..start + 6];
        lagrange6(ys, t)
    }
}

impl RadialFunction for GridInterpolant<'_> {
    fn value(&self, r: f64) -> f64 {
        self.u_at(r) / r
    }

    fn weighted(&self, r: f64) -> f64 {
        self.u_at(r)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.bs.interfaces.clone()
    }

    fn support(&self) -> Option<f64> {
        Some(self.bs.r_max())
    }
}

/// Lagrange interpolation through six equispaced nodes at `t = 0..5`.
fn lagrange6(ys: &[f64], t: f64) -> f64 {
    // denominators Π_{k≠j} (j - k)
    const DEN: [f64; 6] = [-120.0, 24.0, -12.0, 12.0, -24.0, 120.0];
    let d: [f64; 6] = std::array::from_fn(|k| t - k as f64);
    if let Some(k) = d.iter().position(|&dk| dk == 0.0) {
        return ys[k];
    }
    let full: f64 = d.iter().product();
    let mut acc = 0.0;
    for j in 0..6 {
        acc += ys[j] * full / (d[j] * DEN[j]);
    }
    acc
}

/// Derivative at `x` of the polynomial through `(xs, ys)`.
fn lagrange_derivative(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let mut total = 0.0;
    for j in 0..n {
        let mut dl = 0.0;
        for i in (0..n).filter(|&i| i != j) {
            let mut prod = 1.0 / (xs[j] - xs[i]);
            for k in (0..n).filter(|&k| k != i && k != j) {
                prod *= (x - xs[k]) / (xs[j] - xs[k]);
            }
            dl += prod;
        }
        total += ys[j] * dl;
    }
    total
}

/// Fourth-order first derivative of `u` at node `i`, using only nodes in
/// `[lo, hi]`.
fn derivative_in_segment(u: &[f64], h: f64, lo: usize, hi: usize, i: usize) -> f64 {
    if i >= lo + 2 && i + 2 <= hi {
        (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) / (12.0 * h)
    } else if i < lo + 2 {
        (-25.0 * u[i] + 48.0 * u[i + 1] - 36.0 * u[i + 2] + 16.0 * u[i + 3] - 3.0 * u[i + 4]) / (12.0 * h)
    } else {
        (25.0 * u[i] - 48.0 * u[i - 1] + 36.0 * u[i - 2] - 16.0 * u[i - 3] + 3.0 * u[i - 4]) / (12.0 * h)
    }
}

/// Composite Simpson on equispaced samples, with a 3/8 panel at the end
/// for an odd number of intervals.
fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    match n {
        0 => 0.0,
        1 => 0.5 * h * (y[0] + y[1]),
        2 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        3 => 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]),
        _ if n.is_multiple_of(2) => {
            let mut s = y[0] + y[n];
            for (k, v) in y.iter().enumerate().take(n).skip(1) {
                s += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            s * h / 3.0
        }
        _ => simpson(&y[..=n - 3], h) + simpson(&y[n - 3..], h),
    }
}

/// Fourth-order end-corrected trapezoid (needs at least 6 intervals).
fn gregory(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    if n < 6 {
        return simpson(y, h);
    }
    let inner: f64 = y[3..=n - 3].iter().sum();
    h * (3.0 / 8.0 * (y[0] + y[n]) + 7.0 / 6.0 * (y[1] + y[n - 1]) + 23.0 / 24.0 * (y[2] + y[n - 2]) + inner)
}

struct Shooter {
    m: f64,
    h: f64,
    n: usize,
    v: Vec<f64>,
    series: OriginSeries,
    interface: Option<(usize, Interface)>,
    match_index: usize,
    bracket: (f64, f64),
}

impl Shooter {
    fn new(spec: &PotentialSpec, m: f64, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        positive("m", m)?;
        spec.check_binding()?;
        let mut h = cfg.r_max / cfg.n_grid as f64;
        let mut interface = None;
        if let Some(iface) = spec.interface() {
            let r = iface.radius();
            let k = (r / h).round().max(1.0);
            h = r / k;
            let j = k as usize;
            if j < EDGE_STEPS {
                return Err(Error::InsufficientResolution(r));
            }
            interface = Some((j, iface));
        }
        let n = (cfg.r_max / h).round() as usize;
        if let Some((j, iface)) = interface {
            if j + EDGE_STEPS > n {
                return Err(Error::InsufficientResolution(iface.radius()));
            }
        }
        let series = spec.origin_series();
        let mut v: Vec<f64> = (0..=n)
            .map(|i| {
                if i == 0 {
                    series.v0
                } else {
                    spec.smooth_value_at(i as f64 * h)
                }
            })
            .collect();
        if let Some((j, Interface::Step { inside, outside, .. })) = interface {
            v[j] = 0.5 * (inside + outside);
        }
        let mut match_index =
            ((cfg.match_radius_fraction * n as f64).round() as usize).clamp(EDGE_STEPS, n - EDGE_STEPS);
        if let Some((j, _)) = interface {
            if match_index.abs_diff(j) < 3 {
                match_index = if j + 6 < n - EDGE_STEPS { j + 6 } else { j - 6 };
            }
        }
        Ok(Shooter {
            m,
            h,
            n,
            v,
            series,
            interface,
            match_index,
            bracket: cfg.energy_bracket,
        })
    }

    fn q(&self, i: usize, e: f64) -> f64 {
        2.0 * self.m * (self.v[i] - e)
    }

    /// `q` at node `k` as seen by the three-point relation centred on
    /// `center`: a neighbour of a step node takes the one-sided value.
    fn qc(&self, k: usize, center: usize, e: f64) -> f64 {
        if let Some((j, Interface::Step { inside, outside, .. })) = self.interface {
            if k == j && center != j {
                let v = if center < j { inside } else { outside };
                return 2.0 * self.m * (v - e);
            }
        }
        self.q(k, e)
    }

    /// `u(h)` from the origin series with `u'(0) = 1`.
    fn start_value(&self, e: f64) -> f64 {
        let m = self.m;
        let OriginSeries { pole, v0, v1 } = self.series;
        let b2 = -m * pole;
        let b3 = m * (m * pole * pole + v0 - e) / 3.0;
        let b4 = m * (-pole * b3 + (v0 - e) * b2 + v1) / 6.0;
        let h = self.h;
        h * (1.0 + h * (b2 + h * (b3 + h * b4)))
    }

    /// Extra term in the Numerov three-point relation at an interface node.
    fn interface_term(&self, i: usize, e: f64, u: &[f64], forward: bool) -> f64 {
        let Some((j, iface)) = self.interface else {
            return 0.0;
        };
        if i != j {
            return 0.0;
        }
        let h = self.h;
        match iface {
            Interface::Delta { strength, .. } => {
                let jump = 2.0 * self.m * strength * u[i];
                h * jump * (1.0 + h * h * self.q(i, e) / 12.0)
            }
            Interface::Step { inside, outside, .. } => {
                let dq = 2.0 * self.m * (outside - inside);
                let du = if forward {
                    (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * h)
                } else {
                    (-3.0 * u[i] + 4.0 * u[i + 1] - u[i + 2]) / (2.0 * h)
                };
                h * h * h * dq * du / 12.0
            }
        }
    }

    /// Outward solution on nodes `0..=upto` and its number of nodes.
    fn outward(&self, e: f64, upto: usize) -> (Vec<f64>, usize) {
        let h2 = self.h * self.h / 12.0;
        let mut u = vec![0.0; upto + 1];
        u[1] = self.start_value(e);
        let s0 = -2.0 * self.m * self.series.pole;
        let mut nodes = 0;
        for i in 1..upto {
            let s_prev = if i == 1 { s0 } else { self.qc(i - 1, i, e) * u[i - 1] };
            let rhs = 2.0 * u[i] - u[i - 1]
                + h2 * (10.0 * self.q(i, e) * u[i] + s_prev)
                + self.interface_term(i, e, &u, true);
            u[i + 1] = rhs / (1.0 - h2 * self.qc(i + 1, i, e));
            if u[i + 1] * u[i] < 0.0 || (u[i + 1] == 0.0 && u[i] != 0.0) {
                nodes += 1;
            }
            if u[i + 1].abs() > 1e150 {
                for x in u[..=i + 1].iter_mut() {
                    *x *= 1e-150;
                }
            }
        }
        (u, nodes)
    }

    /// Inward solution on nodes `from..=n` (entries below `from` are zero).
    fn inward(&self, e: f64, from: usize) -> Vec<f64> {
        let n = self.n;
        let h2 = self.h * self.h / 12.0;
        let kappa = (2.0 * self.m * (-e).max(0.0)).sqrt();
        let mut u = vec![0.0; n + 1];
        u[n] = 1.0;
        u[n - 1] = (kappa * self.h).exp();
        for i in (from + 1..n).rev() {
            let rhs = 2.0 * u[i] - u[i + 1] * (1.0 - h2 * self.qc(i + 1, i, e))
                + 10.0 * h2 * self.q(i, e) * u[i]
                + self.interface_term(i, e, &u, false);
            u[i - 1] = rhs / (1.0 - h2 * self.qc(i - 1, i, e));
            if u[i - 1].abs() > 1e150 {
                for x in u[i - 1..].iter_mut() {
                    *x *= 1e-150;
                }
            }
        }
        u
    }

    fn node_count(&self, e: f64) -> usize {
        self.outward(e, self.n).1
    }

    /// Logarithmic-derivative mismatch at the match node.
    fn mismatch(&self, e: f64) -> f64 {
        let k = self.match_index;
        let (out, _) = self.outward(e, k + 1);
        let inn = self.inward(e, k);
        out[k + 1] / out[k] - inn[k + 1] / inn[k]
    }

    /// Bisection on the Sturm node count down to relative width `rel`.
    fn bracket_ground(&self, rel: f64) -> Result<(f64, f64)> {
        let (mut lo, mut hi) = self.bracket;
        if self.node_count(hi) == 0 {
            return Err(Error::NoBoundState);
        }
        let below = self.node_count(lo);
        if below != 0 {
            return Err(Error::ExcitedState { nodes: below });
        }
        for _ in 0..200 {
            if hi - lo <= rel * lo.abs().min(hi.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.node_count(mid) == 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    }

    fn solve(&self, tol: f64) -> Result<f64> {
        let (mut a, mut b) = self.bracket_ground(1e-7)?;
        let (mut fa, mut fb) = (self.mismatch(a), self.mismatch(b));
        if !(fa * fb < 0.0) {
            // mismatch not usable here; finish by bisection
            let (lo, hi) = self.bracket_ground(tol)?;
            return Ok(0.5 * (lo + hi));
        }
        let mut side = 0;
        let mut c = b;
        for _ in 0..200 {
            let prev = c;
            c = (a * fb - b * fa) / (fb - fa);
            let fc = self.mismatch(c);
            if fc == 0.0 || (c - prev).abs() <= tol * c.abs() || (b - a).abs() <= tol * c.abs() {
                break;
            }
            if fc * fb > 0.0 {
                b = c;
                fb = fc;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            } else {
                a = c;
                fa = fc;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            }
        }
        Ok(c)
    }
}

/// Ground state of `spec` for particle mass `m` on the grid described by `cfg`.
pub fn solve_ground(spec: &PotentialSpec, m: f64, cfg: &SolverConfig) -> Result<BoundState> {
    let shooter = Shooter::new(spec, m, cfg)?;
    let e = shooter.solve(cfg.tol_energy)?;
    let (n, k, h) = (shooter.n, shooter.match_index, shooter.h);

    let (out, _) = shooter.outward(e, k + 1);
    let inn = shooter.inward(e, k);
    let scale = out[k] / inn[k];
    let mut u: Vec<f64> = out[..k].to_vec();
    u.extend(inn[k..].iter().map(|x| x * scale));

    let nodes = u.windows(2).skip(1).filter(|w| w[0] * w[1] < 0.0).count();
    if nodes != 0 {
        return Err(Error::ExcitedState { nodes });
    }

    let mut bounds = vec![0];
    let interfaces: Vec<f64> = shooter
        .interface
        .iter()
        .map(|&(j, _)| {
            bounds.push(j);
            j as f64 * h
        })
        .collect();
    bounds.push(n);
    let u2: Vec<f64> = u.iter().map(|x| x * x).collect();
    let mu = (2.0 * m * -e).sqrt();
    let tail = u2[n] / (2.0 * mu);
    let integral: f64 = bounds.windows(2).map(|s| simpson(&u2[s[0]..=s[1]], h)).sum::<f64>() + tail;
    let norm = 1.0 / (4.0 * std::f64::consts::PI * integral).sqrt();
    for x in u.iter_mut() {
        *x *= norm;
    }
    let check: f64 = bounds.windows(2).map(|s| gregory(&u2[s[0]..=s[1]], h)).sum::<f64>() + tail;
    let norm_check = 4.0 * std::f64::consts::PI * check * norm * norm;

    let r: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let psi0 = norm;
    // seven-point forward difference of ψ = u/r, ψ(0) from the series
    const D7: [f64; 7] = [-49.0 / 20.0, 6.0, -7.5, 20.0 / 3.0, -3.75, 1.2, -1.0 / 6.0];
    let psi0_prime = D7
        .iter()
        .enumerate()
        .map(|(i, w)| w * if i == 0 { psi0 } else { u[i] / r[i] })
        .sum::<f64>()
        / h;

    Ok(BoundState {
        energy: e,
        mu,
        psi0,
        psi0_prime,
        mass: m,
        step: h,
        r,
        u,
        interfaces,
        norm_check,
    })
}

/// [`solve_ground`] with [`SolverConfig::auto`].
pub fn solve_ground_auto(spec: &PotentialSpec, m: f64) -> Result<BoundState> {
    let cfg = SolverConfig::auto(spec, m)?;
    solve_ground(spec, m, &cfg)
}

/// Relative violation of the cusp condition `ψ'(0) = -m g ψ(0)`.
pub fn kato_residual(bs: &BoundState, spec: &PotentialSpec) -> Result<f64> {
    let cls = spec.classify()?;
    if cls.category != SingularityCategory::CoulombPoleAtOrigin {
        return Err(Error::Domain(format!(
            "cusp condition needs a Coulomb pole at the origin, {} has none",
            spec.kind_name()
        )));
    }
    let eta = bs.mass * spec.origin_series().pole;
    Ok((bs.psi0_prime + eta * bs.psi0).abs() / (eta * bs.psi0).abs())
}

/// `ψ'(R-) - ψ'(R+)` from one-sided interpolation on each side of `radius`.
pub fn derivative_jump(bs: &BoundState, radius: f64) -> Result<f64> {
    let h = bs.step;
    let n = bs.last_index();
    if !(radius >= 5.0 * h && radius <= bs.r[n] - 5.0 * h) {
        return Err(Error::InsufficientResolution(radius));
    }
    let x = radius / h;
    let left = (x + 1e-9).floor() as usize;
    let right = (x - 1e-9).ceil() as usize;
    let side = |idx: std::ops::RangeInclusive<usize>| {
        let xs: Vec<f64> = idx.clone().map(|i| bs.r[i]).collect();
        let ys: Vec<f64> = idx.map(|i| bs.psi_node(i)).collect();
        lagrange_derivative(&xs, &ys, radius)
    };
    Ok(side(left - 5..=left) - side(right..=right + 5))
}

use std::fs;

use photoion_core::boundstate::kato_residual;
use photoion_core::potentials::CATALOG;
use photoion_core::radialft::potential_ft;
use photoion_core::tailfit::{fit_exp_rate, fit_power, verify_classification};
use photoion_core::units::natural_area_to_barn;
use photoion_core::xsec::{
    log_grid, ratio_law, sigma_closed, sigma_master, stobbe_factor, sweep, ASYMPTOTIC_THRESHOLD,
};
use photoion_core::{best_ft, Couplings, Error, FtConfig, FtMethod, PotentialSpec, SolverConfig, TailOptions};
use serde_json::json;

use crate::cache::{self, BoundRecord};
use crate::output::{emit, fmt, read_csv, to_json, Table, JSON_SCHEMA};
use crate::{
    input, BoundArgs, Failure, FitArgs, Format, FtArgs, GlobalOpts, Law, ListArgs, RatioArgs, SigmaArgs, SolverArgs,
    Spacing, Units,
};

struct CatalogEntry {
    kind: &'static str,
    singularity: &'static str,
    tail: &'static str,
}

const ENTRIES: [CatalogEntry; 7] = [
    CatalogEntry {
        kind: "coulomb",
        singularity: "coulomb pole at r = 0",
        tail: "sigma ~ omega^-3.5",
    },
    CatalogEntry {
        kind: "yukawa",
        singularity: "coulomb pole at r = 0",
        tail: "sigma ~ omega^-3.5",
    },
    CatalogEntry {
        kind: "dirac-bubble",
        singularity: "real-axis jump at r (u' discontinuous)",
        tail: "sigma ~ omega^-2.5 (envelope)",
    },
    CatalogEntry {
        kind: "rect-well",
        singularity: "real-axis jump at r (u'' discontinuous)",
        tail: "sigma ~ omega^-3.5 (envelope)",
    },
    CatalogEntry {
        kind: "tietz",
        singularity: "coulomb pole at r = 0",
        tail: "sigma ~ omega^-3.5",
    },
    CatalogEntry {
        kind: "lorentzian",
        singularity: "complex poles at r = +-i a",
        tail: "sigma ~ exp(-2 a p)",
    },
    CatalogEntry {
        kind: "poschl-teller",
        singularity: "complex poles at r = +-i pi/(2 kappa)",
        tail: "sigma ~ exp(-pi p / kappa)",
    },
];

fn canonical_kind(kind: &str) -> Option<&'static str> {
    let k = kind.trim().to_lowercase().replace('_', "-");
    let k = match k.as_str() {
        "bubble" | "diracbubble" => "dirac-bubble",
        "well" | "rectwell" => "rect-well",
        "tietz-tf" | "tietztf" => "tietz",
        "poschlteller" => "poschl-teller",
        other => other,
    };
    CATALOG.iter().copied().find(|c| *c == k)
}

pub fn list(g: &GlobalOpts, a: &ListArgs) -> Result<(), Failure> {
    let entries: Vec<&CatalogEntry> = match &a.kind {
        None => ENTRIES.iter().collect(),
        Some(k) => {
            let kind = canonical_kind(k).ok_or_else(|| {
                Failure::usage(format!("unknown potential kind {k:?}; known: {}", CATALOG.join(", ")))
            })?;
            ENTRIES.iter().filter(|e| e.kind == kind).collect()
        }
    };
    let params = |e: &CatalogEntry| PotentialSpec::param_names(e.kind).unwrap_or(&[]);
    let text = if a.json || g.format == Some(Format::Json) {
        let arr: Vec<_> = entries
            .iter()
            .map(|e| json!({ "kind": e.kind, "params": params(e), "singularity": e.singularity, "predicted_tail": e.tail }))
            .collect();
        to_json(&arr)
    } else {
        let mut s = format!(
            "{:<14} {:<24} {:<40} {}\n",
            "kind", "params", "singularity", "predicted tail"
        );
        for e in entries {
            s.push_str(&format!(
                "{:<14} {:<24} {:<40} {}\n",
                e.kind,
                params(e).join(","),
                e.singularity,
                e.tail
            ));
        }
        s
    };
    emit(&text, g.out.as_deref())
}

fn grid(lo: f64, hi: f64, n: usize, spacing: Spacing, name: &str) -> Result<Vec<f64>, Failure> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Failure::usage(format!(
            "{name} range needs 0 < min < max, got [{lo}, {hi}]"
        )));
    }
    if n < 2 {
        return Err(Failure::usage(format!("{name} grid needs at least 2 points")));
    }
    Ok(match spacing {
        Spacing::Log => log_grid(lo, hi, n),
        Spacing::Linear => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    })
}

pub fn ft(g: &GlobalOpts, a: &FtArgs) -> Result<(), Failure> {
    let spec = input::potential(&a.pot)?;
    let ps = grid(a.p_min, a.p_max, a.n, a.spacing, "p")?;
    let mut cfg = FtConfig::default();
    if let Some(t) = a.rel_tol {
        cfg = cfg.with_rel_tol(t);
    }
    if let Some(r) = a.r_break {
        cfg = cfg.with_break(r);
    }
    cfg.validate()?;
    let mut rows = Vec::with_capacity(ps.len());
    for p in ps {
        let analytic = spec
            .analytic_ft(p)?
            .filter(|r| r.method == FtMethod::Analytic)
            .map(|r| r.value);
        let quad = match potential_ft(&spec, p, &cfg) {
            Ok(r) => Some(r),
            Err(Error::NotPointwise | Error::AnalyticOnly(_)) => None,
            Err(e) => return Err(Failure::numeric(format!("p = {p}: {e}"))),
        };
        let rel_diff = match (analytic, quad) {
            (Some(v), Some(q)) => Some(if v == 0.0 {
                (q.value - v).abs()
            } else {
                ((q.value - v) / v).abs()
            }),
            _ => None,
        };
        rows.push(vec![
            Some(p),
            analytic,
            quad.map(|q| q.value),
            rel_diff,
            quad.map(|q| q.err_estimate),
        ]);
    }
    let table = Table {
        name: "ft",
        columns: &["p", "v_analytic", "v_quad", "rel_diff", "err_est"],
        rows,
    };
    emit(&table.render(g.format), g.out.as_deref())
}

fn solver_config(spec: &PotentialSpec, m: f64, s: &SolverArgs) -> Result<SolverConfig, Failure> {
    let mut cfg = SolverConfig::auto(spec, m)?;
    if let Some(r) = s.r_max {
        cfg.r_max = r;
    }
    if let Some(n) = s.n_grid {
        cfg.n_grid = n;
    }
    if let Some(lo) = s.e_lo {
        cfg.energy_bracket.0 = lo;
    }
    if let Some(hi) = s.e_hi {
        cfg.energy_bracket.1 = hi;
    }
    if let Some(t) = s.tol_energy {
        cfg.tol_energy = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn solve(g: &GlobalOpts, spec: &PotentialSpec, s: &SolverArgs) -> Result<(BoundRecord, String), Failure> {
    let cfg = solver_config(spec, g.m, s)?;
    cache::solve(spec, g.m, &cfg, g.cache_dir.as_deref())
}

pub fn bound(g: &GlobalOpts, a: &BoundArgs) -> Result<(), Failure> {
    let spec = input::potential(&a.pot)?;
    let (rec, text) = solve(g, &spec, &a.solver)?;
    let bs = &rec.state;
    let mut summary = format!(
        "{}: energy = {} ionization = {} psi0^2 = {} mu = {}",
        spec.kind_name(),
        fmt(bs.energy),
        fmt(bs.ionization_potential()),
        fmt(bs.psi0 * bs.psi0),
        fmt(bs.mu)
    );
    if spec.coulomb_strength().is_some() {
        summary.push_str(&format!(" kato_residual = {}", fmt(kato_residual(bs, &spec)?)));
    }
    let body = match g.format.unwrap_or(Format::Json) {
        Format::Json => text,
        Format::Csv => Table {
            name: "bound",
            columns: &["r", "u"],
            rows: bs.r.iter().zip(&bs.u).map(|(r, u)| vec![Some(*r), Some(*u)]).collect(),
        }
        .to_csv(),
    };
    emit(&body, g.out.as_deref())?;
    if g.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn sigma(g: &GlobalOpts, a: &SigmaArgs) -> Result<(), Failure> {
    let spec = input::potential(&a.pot)?;
    let c = Couplings::new(g.alpha, g.m, a.k_electrons)?;
    let pole = spec.coulomb_strength();
    if a.stobbe && pole.is_none() {
        return Err(Failure::usage(format!(
            "--stobbe needs a Coulomb pole at the origin; {} has none",
            spec.kind_name()
        )));
    }
    if a.units == Units::Physical && !(a.unit_mass > 0.0 && a.unit_mass.is_finite()) {
        return Err(Failure::usage("--unit-mass must be positive"));
    }
    let (psi0sq, ionization) = match a.psi0sq {
        Some(v) if v > 0.0 && v.is_finite() => (v, None),
        Some(v) => return Err(Failure::usage(format!("--psi0sq must be positive, got {v}"))),
        None => {
            let (rec, _) = solve(g, &spec, &a.solver)?;
            (rec.state.psi0 * rec.state.psi0, Some(rec.state.ionization_potential()))
        }
    };
    let omegas = if !a.omega.is_empty() {
        a.omega.clone()
    } else {
        let (lo, hi) = match (a.omega_min, a.omega_max, ionization) {
            (Some(lo), Some(hi), _) => (lo, hi),
            (lo, hi, Some(i)) => (lo.unwrap_or(1e2 * i), hi.unwrap_or(1e4 * i)),
            _ => {
                return Err(Failure::usage(
                    "with --psi0sq give --omega or both --omega-min and --omega-max",
                ))
            }
        };
        grid(lo, hi, a.n, a.spacing, "omega")?
    };
    if let Some(&bad) = omegas.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Failure::usage(format!("photon energies must be positive, got {bad}")));
    }
    if let Some(i) = ionization {
        let below = omegas.iter().filter(|w| **w < ASYMPTOTIC_THRESHOLD * i).count();
        if below > 0 && !g.force {
            eprintln!(
                "warning: {below} of {} photon energies lie below {ASYMPTOTIC_THRESHOLD} I = {}; the asymptotic laws need not hold there",
                omegas.len(),
                fmt(ASYMPTOTIC_THRESHOLD * i)
            );
        }
    }
    let cfg = FtConfig::default();
    let psi0 = psi0sq.sqrt();
    let stobbe = |p: f64| match (a.stobbe, pole) {
        (true, Some(gp)) => stobbe_factor(c.m * gp / p),
        _ => 1.0,
    };
    let eq6 = sweep(&omegas, |w| {
        let p = c.momentum(w);
        let mut pt = sigma_master(best_ft(&spec, p, &cfg)?.value, psi0, w, &c)?;
        pt.sigma *= stobbe(p);
        Ok(pt)
    })?;
    let scale = |s: f64| match a.units {
        Units::Natural => s,
        Units::Physical => natural_area_to_barn(s, a.unit_mass),
    };
    let mut rows = Vec::with_capacity(eq6.len());
    for pt in eq6 {
        let closed = sigma_closed(&spec, psi0sq, pt.omega, &c, a.stobbe)?.map(|x| x.sigma);
        rows.push(vec![
            Some(pt.omega),
            Some(pt.p),
            Some(scale(pt.sigma)),
            closed.map(scale),
            closed.map(|x| pt.sigma / x),
        ]);
    }
    let table = Table {
        name: "sigma",
        columns: &["omega", "p", "sigma_eq6", "sigma_closed", "ratio"],
        rows,
    };
    emit(&table.render(g.format), g.out.as_deref())
}

pub fn ratio(g: &GlobalOpts, a: &RatioArgs) -> Result<(), Failure> {
    let spec = input::potential(&a.pot)?;
    let c = Couplings::new(g.alpha, g.m, 1)?;
    let r = ratio_law(a.omega1, a.omega2, &spec, &c, &FtConfig::default())?;
    let table = Table {
        name: "ratio",
        columns: &["omega1", "omega2", "ratio"],
        rows: vec![vec![Some(a.omega1), Some(a.omega2), Some(r)]],
    };
    emit(&table.render(g.format), g.out.as_deref())
}

pub fn fit_tail(g: &GlobalOpts, a: &FitArgs) -> Result<(), Failure> {
    let text = match &a.input {
        Some(path) => {
            let src =
                fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let (head, rows) = read_csv(&src)?;
            let law = a.law.unwrap_or(Law::Power);
            let xname = match law {
                Law::Power => "omega",
                Law::Exp => "p",
            };
            let col = |name: &str| head.iter().position(|h| h == name);
            let xi = col(xname).ok_or_else(|| Failure::usage(format!("table has no {xname} column")))?;
            let yi = col("sigma_eq6")
                .or_else(|| col("sigma"))
                .ok_or_else(|| Failure::usage("table has no sigma_eq6 column"))?;
            let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r[xi]?, r[yi]?))).collect();
            let xmin = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let xmax = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            let window = (a.window_lo.unwrap_or(xmin), a.window_hi.unwrap_or(xmax));
            let model = match law {
                Law::Power => fit_power(&pts, window)?,
                Law::Exp => fit_exp_rate(&pts, window)?,
            };
            to_json(&json!({ "schema": JSON_SCHEMA, "model": model }))
        }
        None => {
            if a.law.is_some() {
                return Err(Failure::usage(
                    "--law applies to --input tables; the pipeline uses the predicted law",
                ));
            }
            let spec = input::potential(&a.pot)?;
            let (rec, _) = solve(g, &spec, &a.solver)?;
            let c = Couplings::new(g.alpha, g.m, 1)?;
            let defaults = TailOptions::default();
            let opts = TailOptions {
                omega_window: (
                    a.window_lo.unwrap_or(defaults.omega_window.0),
                    a.window_hi.unwrap_or(defaults.omega_window.1),
                ),
                n_points: a.n,
                ..defaults
            };
            let report = verify_classification(&spec, &c, &rec.state, &opts)?;
            to_json(&json!({ "schema": JSON_SCHEMA, "report": report }))
        }
    };
    emit(&text, g.out.as_deref())
}

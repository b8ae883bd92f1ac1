//! The `verify` command: oracle and property checks grouped by suite.

use std::f64::consts::PI;
use std::time::Instant;

use photoion_core::boundstate::{derivative_jump, kato_residual};
use photoion_core::radialft::potential_ft;
use photoion_core::tailfit::{fit_exp_rate, tietz_correction_coefficient, verify_classification, TailKind};
use photoion_core::xsec::{
    asymptotic_psi_ratio, fb_correction_factor, log_grid, ratio_law, sigma_closed, sigma_master, stobbe_factor,
};
use photoion_core::{solve_ground_auto, Couplings, FtConfig, PotentialSpec, Result, TailOptions, Verdict};
use serde::Serialize;

use crate::output::{emit, to_json};
use crate::{Failure, GlobalOpts, Suite};

pub const REPORT_SCHEMA: &str = "photoion-verify/1";

#[derive(Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub suite: &'static str,
    pub passed: bool,
    pub measured: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    schema: &'static str,
    suite: &'static str,
    passed: bool,
    n_checks: usize,
    n_failed: usize,
    n_errors: usize,
    checks: &'a [Check],
}

/// Measured value against an upper bound.
fn bound(id: &str, suite: &'static str, measured: f64, tol: f64, detail: String) -> Check {
    Check {
        id: id.into(),
        suite,
        passed: measured <= tol,
        measured: Some(measured),
        tolerance: Some(tol),
        detail,
        error: None,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

type Checks = Result<Vec<Check>>;

fn run_group(suite: &'static str, id: &str, f: impl FnOnce() -> Checks, out: &mut Vec<Check>) {
    match f() {
        Ok(mut v) => out.append(&mut v),
        Err(e) => out.push(Check {
            id: id.into(),
            suite,
            passed: false,
            measured: None,
            tolerance: None,
            detail: String::new(),
            error: Some(e.to_string()),
        }),
    }
}

fn ft_oracle(name: &str, spec: PotentialSpec) -> Checks {
    let cfg = FtConfig::default();
    let mut worst: f64 = 0.0;
    for p in log_grid(0.1, 50.0, 40) {
        let exact = spec.analytic_ft(p)?.expect("closed form").value;
        worst = worst.max(rel(potential_ft(&spec, p, &cfg)?.value, exact));
    }
    Ok(vec![bound(
        &format!("ft.oracle.{name}"),
        "ft",
        worst,
        1e-8,
        "max relative difference, quadrature vs closed form, 40 log-spaced p in [0.1, 50]".into(),
    )])
}

fn ft_pt_rate() -> Checks {
    let kappa = 1.0;
    let spec = PotentialSpec::poschl_teller(-1.0, kappa)?;
    let cfg = FtConfig::default();
    let pts = (0..24)
        .map(|i| {
            let p = 5.0 + 25.0 * i as f64 / 23.0;
            Ok((p, potential_ft(&spec, p, &cfg)?.value.abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let model = fit_exp_rate(&pts, (5.0, 30.0))?;
    let TailKind::Exponential { rate, .. } = model.kind else {
        unreachable!()
    };
    let predicted = PI / (2.0 * kappa);
    Ok(vec![bound(
        "ft.poschl-teller.rate",
        "ft",
        rel(rate, predicted),
        0.02,
        format!("|V(p)| by quadrature on sech^2, p in [5, 30]: rate {rate:.6} vs pi/(2 kappa) = {predicted:.6}"),
    )])
}

fn ft_tietz() -> Checks {
    let spec = PotentialSpec::tietz(10.0, 0.6)?;
    let cfg = FtConfig::default();
    let c1 = tietz_correction_coefficient(&spec, 40.0, &cfg)?;
    let c2 = tietz_correction_coefficient(&spec, 80.0, &cfg)?;
    Ok(vec![bound(
        "ft.tietz.coefficient",
        "ft",
        rel(c1, c2),
        5e-4,
        format!("1/(bp)^2 coefficient {c2:.8} (from bp = 80) vs {c1:.8} (bp = 40); closed-form value 6"),
    )])
}

fn bound_hydrogen() -> Checks {
    let spec = PotentialSpec::coulomb(1.0)?;
    let t0 = Instant::now();
    let bs = solve_ground_auto(&spec, 1.0)?;
    let dt = t0.elapsed().as_secs_f64();
    Ok(vec![
        bound(
            "bound.hydrogen.energy",
            "bound",
            rel(bs.energy, -0.5),
            1e-8,
            format!("E = {:.15}", bs.energy),
        ),
        bound(
            "bound.hydrogen.psi0sq",
            "bound",
            rel(bs.psi0 * bs.psi0, 1.0 / PI),
            1e-4,
            format!("psi(0)^2 = {:.12} vs 1/pi", bs.psi0 * bs.psi0),
        ),
        bound(
            "bound.hydrogen.kato",
            "bound",
            kato_residual(&bs, &spec)?,
            1e-6,
            "|psi'(0) + m g psi(0)| / |m g psi(0)|".into(),
        ),
        bound(
            "bound.hydrogen.runtime",
            "bound",
            dt,
            1.0,
            "solve time in seconds".into(),
        ),
    ])
}

fn bound_levels() -> Checks {
    let cases = [
        ("yukawa", PotentialSpec::yukawa(1.0, 0.2)?, -0.326_808_511_3, 1e-8),
        (
            "lorentzian",
            PotentialSpec::lorentzian(-3.0, 1.0)?,
            -0.057_566_961_602_468,
            1e-8,
        ),
        ("tietz", PotentialSpec::tietz(10.0, 0.6)?, -0.001_593_206_947_333, 1e-8),
        ("poschl-teller", PotentialSpec::poschl_teller(-3.0, 1.0)?, -0.5, 1e-8),
    ];
    cases
        .into_iter()
        .map(|(name, spec, e, tol)| {
            let bs = solve_ground_auto(&spec, 1.0)?;
            Ok(bound(
                &format!("bound.{name}.energy"),
                "bound",
                rel(bs.energy, e),
                tol,
                format!("E = {:.15} vs independent shooting {e}", bs.energy),
            ))
        })
        .collect()
}

fn bound_interfaces() -> Checks {
    let (v0, r) = (-2.0, 1.0);
    let spec = PotentialSpec::dirac_bubble(v0, r)?;
    let bs = solve_ground_auto(&spec, 1.0)?;
    // kappa (1 + coth kappa R) = -2 m V0
    let f = |k: f64| k * (1.0 + 1.0 / (k * r).tanh()) + 2.0 * v0;
    let (mut lo, mut hi) = (1e-6, -2.0 * v0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let kappa = 0.5 * (lo + hi);
    let exact = -kappa * kappa / 2.0;
    let jump = derivative_jump(&bs, r)?;
    let expected = -2.0 * v0 * bs.interpolant().u_at(r) / r;

    let well = PotentialSpec::rect_well(-2.0, 1.5)?;
    let ws = solve_ground_auto(&well, 1.0)?;
    let wjump = derivative_jump(&ws, 1.5)?;
    Ok(vec![
        bound(
            "bound.dirac-bubble.energy",
            "bound",
            rel(bs.energy, exact),
            1e-8,
            format!("E = {:.15} vs matching-condition root {exact:.15}", bs.energy),
        ),
        bound(
            "bound.dirac-bubble.jump",
            "bound",
            rel(jump, expected),
            1e-4,
            format!("psi'(R-) - psi'(R+) = {jump:.10} vs -2 m V0 psi(R) = {expected:.10}"),
        ),
        bound(
            "bound.rect-well.jump",
            "bound",
            wjump.abs(),
            1e-6,
            "|psi'(R-) - psi'(R+)| for the step".into(),
        ),
    ])
}

fn bound_screened_out() -> Checks {
    let spec = PotentialSpec::yukawa(1.0, 10.0)?;
    let outcome = solve_ground_auto(&spec, 1.0);
    let ok = matches!(outcome, Err(photoion_core::Error::NoBoundState));
    Ok(vec![Check {
        id: "bound.yukawa.over-screened".into(),
        suite: "bound",
        passed: ok,
        measured: None,
        tolerance: None,
        detail: format!(
            "g = 1, lambda = 10 must report no bound state: {}",
            match outcome {
                Ok(bs) => format!("found E = {}", bs.energy),
                Err(e) => e.to_string(),
            }
        ),
        error: None,
    }])
}

fn xsec_dual_path() -> Checks {
    let c = Couplings::default();
    let psi0sq = 1.0 / PI;
    let cases = [
        ("coulomb", PotentialSpec::coulomb(1.0)?),
        ("dirac-bubble", PotentialSpec::dirac_bubble(-2.0, 1.0)?),
        ("rect-well", PotentialSpec::rect_well(-2.0, 1.5)?),
        ("lorentzian", PotentialSpec::lorentzian(-3.0, 1.0)?),
        ("poschl-teller", PotentialSpec::poschl_teller(-2.0, 1.0)?),
    ];
    cases
        .into_iter()
        .map(|(name, spec)| {
            let mut worst: f64 = 0.0;
            for w in log_grid(2.0, 400.0, 20) {
                let vp = spec.asymptotic_ft(c.momentum(w))?;
                let master = sigma_master(vp, psi0sq.sqrt(), w, &c)?.sigma;
                let closed = sigma_closed(&spec, psi0sq, w, &c, false)?.expect("catalog form").sigma;
                worst = worst.max(rel(master, closed));
            }
            Ok(bound(
                &format!("xsec.dual-path.{name}"),
                "xsec",
                worst,
                1e-12,
                "closed form vs master formula with the same transform, 20 omega in [2, 400]".into(),
            ))
        })
        .collect()
}

/// ψ(0)² of hydrogen as quoted to seven digits in the example.
#[allow(clippy::approx_constant)]
const EXAMPLE_PSI0SQ: f64 = 0.318_309_9;

fn xsec_laws() -> Checks {
    let c = Couplings::default();
    let coulomb = PotentialSpec::coulomb(1.0)?;
    let r = ratio_law(3.0, 12.0, &coulomb, &c, &FtConfig::default())?;
    let (amp, xs) = fb_correction_factor(0.1)?;
    let small = stobbe_factor(0.01) - (1.0 - PI * 0.01);
    let s = sigma_master(coulomb.asymptotic_ft(2.0)?, EXAMPLE_PSI0SQ.sqrt(), 2.0, &c)?.sigma;
    let stobbe = sigma_closed(&coulomb, EXAMPLE_PSI0SQ, 2.0, &c, true)?
        .expect("closed")
        .sigma
        / sigma_closed(&coulomb, EXAMPLE_PSI0SQ, 2.0, &c, false)?
            .expect("closed")
            .sigma;
    Ok(vec![
        bound(
            "xsec.ratio.coulomb",
            "xsec",
            (r - 128.0).abs(),
            1e-10,
            format!("sigma(w)/sigma(4w) = {r:.14}"),
        ),
        bound(
            "xsec.correction.factors",
            "xsec",
            (amp - 0.842_920).abs().max((xs - 0.685_841).abs()),
            5e-7,
            format!("factors at xi = 0.1: ({amp:.6}, {xs:.6})"),
        ),
        bound(
            "xsec.stobbe.small-xi",
            "xsec",
            small,
            5e-4,
            "exp(-pi xi) - (1 - pi xi) at xi = 0.01".into(),
        ),
        bound(
            "xsec.stobbe.half",
            "xsec",
            (stobbe - 0.207_880).abs(),
            5e-7,
            format!("Stobbe multiplier at xi = 0.5: {stobbe:.6}"),
        ),
        bound(
            "xsec.coulomb.example",
            "xsec",
            rel(s, 1.5284e-2),
            1e-4,
            format!("g = 1, omega = 2, psi(0)^2 = 0.3183099: sigma = {s:.6e}"),
        ),
    ])
}

fn xsec_momentum_relation() -> Checks {
    let spec = PotentialSpec::yukawa(1.0, 0.2)?;
    let bs = solve_ground_auto(&spec, 1.0)?;
    let cfg = FtConfig::default();
    let dev = [10.0, 20.0, 40.0]
        .iter()
        .map(|k| Ok((asymptotic_psi_ratio(&bs, &spec, k * bs.mu, &cfg)? - 1.0).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = dev[0] > dev[1] && dev[1] > dev[2];
    let mut check = bound(
        "xsec.momentum-relation.yukawa",
        "xsec",
        dev[2],
        0.01,
        format!(
            "|psi(p) p^2 / (-2 m V(p) psi(0)) - 1| at 10, 20, 40 mu: {:.3e}, {:.3e}, {:.3e}",
            dev[0], dev[1], dev[2]
        ),
    );
    check.passed &= monotone;
    Ok(vec![check])
}

fn tails() -> Checks {
    let c = Couplings::default();
    let opts = TailOptions::default();
    let cases = [
        ("coulomb", PotentialSpec::coulomb(1.0)?),
        ("yukawa", PotentialSpec::yukawa(1.0, 0.2)?),
        ("tietz", PotentialSpec::tietz(10.0, 0.6)?),
        ("dirac-bubble", PotentialSpec::dirac_bubble(-2.0, 1.0)?),
        ("rect-well", PotentialSpec::rect_well(-2.0, 1.5)?),
        ("lorentzian", PotentialSpec::lorentzian(-3.0, 1.0)?),
        ("poschl-teller", PotentialSpec::poschl_teller(-2.0, 1.0)?),
    ];
    let mut out = Vec::new();
    for (name, spec) in cases {
        let bs = solve_ground_auto(&spec, 1.0)?;
        let rep = verify_classification(&spec, &c, &bs, &opts)?;
        let (what, tol) = match rep.fitted.kind {
            TailKind::Power { exponent } => (format!("fitted exponent {exponent:.5}"), opts.tolerances.exponent),
            TailKind::Exponential { rate, .. } => (format!("fitted rate {rate:.5}"), opts.tolerances.rate_rel),
        };
        out.push(bound(
            &format!("tails.{name}"),
            "tails",
            rep.deviation,
            tol,
            format!("{what}, predicted {:?}", rep.predicted),
        ));
        if let Some(j) = &rep.jump {
            let (measured, tol, detail) = match j.samples.last() {
                Some(last) => (
                    last.rel_diff,
                    opts.tolerances.jump_rel,
                    format!(
                        "jump law at envelope peaks p = {}: rel. diff {}",
                        j.samples
                            .iter()
                            .map(|s| format!("{:.3}", s.p))
                            .collect::<Vec<_>>()
                            .join(", "),
                        j.samples
                            .iter()
                            .map(|s| format!("{:.2e}", s.rel_diff))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ),
                None => (
                    j.jump.abs(),
                    opts.tolerances.smooth_jump,
                    "derivative jump at the step".into(),
                ),
            };
            let mut check = bound(&format!("tails.{name}.jump"), "tails", measured, tol, detail);
            check.passed = j.verdict == Verdict::Pass;
            out.push(check);
        }
    }
    Ok(out)
}

pub fn checks(suite: Suite) -> Vec<Check> {
    let mut out = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Ft) {
        for (name, spec) in [
            ("yukawa", PotentialSpec::yukawa(1.0, 1.0)),
            ("rect-well", PotentialSpec::rect_well(-1.0, 1.0)),
            ("lorentzian", PotentialSpec::lorentzian(-1.0, 1.0)),
        ] {
            let id = format!("ft.oracle.{name}");
            run_group("ft", &id, || ft_oracle(name, spec?), &mut out);
        }
        run_group("ft", "ft.poschl-teller.rate", ft_pt_rate, &mut out);
        run_group("ft", "ft.tietz.coefficient", ft_tietz, &mut out);
    }
    if want(Suite::Bound) {
        run_group("bound", "bound.hydrogen", bound_hydrogen, &mut out);
        run_group("bound", "bound.levels", bound_levels, &mut out);
        run_group("bound", "bound.interfaces", bound_interfaces, &mut out);
        run_group("bound", "bound.yukawa.over-screened", bound_screened_out, &mut out);
    }
    if want(Suite::Xsec) {
        run_group("xsec", "xsec.dual-path", xsec_dual_path, &mut out);
        run_group("xsec", "xsec.laws", xsec_laws, &mut out);
        run_group("xsec", "xsec.momentum-relation", xsec_momentum_relation, &mut out);
    }
    if want(Suite::Tails) {
        run_group("tails", "tails", tails, &mut out);
    }
    out
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::All => "all",
        Suite::Ft => "ft",
        Suite::Bound => "bound",
        Suite::Xsec => "xsec",
        Suite::Tails => "tails",
    }
}

pub fn run(g: &GlobalOpts, suite: Suite) -> std::result::Result<(), Failure> {
    let t0 = Instant::now();
    let checks = checks(suite);
    for c in &checks {
        let status = match (&c.error, c.passed) {
            (Some(_), _) => "ERROR",
            (None, true) => "PASS",
            (None, false) => "FAIL",
        };
        let value = match (c.measured, c.tolerance) {
            (Some(m), Some(t)) => format!(" {m:.3e} <= {t:.1e}"),
            _ => String::new(),
        };
        eprintln!("{status:<5} {}{value}", c.id);
        if let Some(e) = &c.error {
            eprintln!("      {e}");
        }
    }
    let n_errors = checks.iter().filter(|c| c.error.is_some()).count();
    let n_failed = checks.iter().filter(|c| !c.passed).count();
    let report = Report {
        schema: REPORT_SCHEMA,
        suite: suite_name(suite),
        passed: n_failed == 0,
        n_checks: checks.len(),
        n_failed,
        n_errors,
        checks: &checks,
    };
    emit(&to_json(&report), g.out.as_deref())?;
    eprintln!(
        "{} of {} checks passed in {:.1} s",
        checks.len() - n_failed,
        checks.len(),
        t0.elapsed().as_secs_f64()
    );
    if n_errors > 0 {
        Err(Failure::numeric(format!("{n_errors} check(s) could not be evaluated")))
    } else if n_failed > 0 {
        Err(Failure {
            code: Failure::VERIFICATION,
            message: format!("{n_failed} check(s) failed"),
        })
    } else {
        Ok(())
    }
}

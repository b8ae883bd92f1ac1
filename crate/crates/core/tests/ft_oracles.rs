#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use photoion_core::radialft::{best_ft, potential_ft, radial_ft, FtConfig, FtMethod};
use photoion_core::tailfit::tietz_correction_coefficient;
use photoion_core::xsec::log_grid;
use photoion_core::{Error, PotentialSpec};

fn cfg() -> FtConfig {
    FtConfig::default()
}

#[test]
fn quadrature_matches_closed_forms_on_log_grid() {
    let specs = [
        PotentialSpec::yukawa(1.0, 1.0).unwrap(),
        PotentialSpec::yukawa(1.0, 0.2).unwrap(),
        PotentialSpec::rect_well(-1.0, 1.0).unwrap(),
        PotentialSpec::rect_well(-2.0, 1.5).unwrap(),
        PotentialSpec::lorentzian(-1.0, 1.0).unwrap(),
    ];
    for spec in &specs {
        let mut honest = 0;
        let grid = log_grid(0.1, 50.0, 40);
        for &p in &grid {
            let exact = spec.analytic_ft(p).unwrap().unwrap().value;
            let q = potential_ft(spec, p, &cfg()).unwrap();
            assert_eq!(q.method, FtMethod::Quadrature);
            let err = (q.value - exact).abs();
            assert!(
                err <= 1e-8 * exact.abs(),
                "{} p={p}: {} vs {exact}",
                spec.kind_name(),
                q.value
            );
            if err <= q.err_estimate.max(1e-10 * exact.abs()) {
                honest += 1;
            }
        }
        assert!(
            honest * 100 >= 99 * grid.len() - 40,
            "{}: {honest}/40 honest",
            spec.kind_name()
        );
    }
}

#[test]
fn exponential_density_transform() {
    // (4π/p)∫ r e^{-r} sin(pr) dr = 8π/(1+p²)²
    let f = |r: f64| (-r).exp();
    let v = radial_ft(&f, 1.0, &cfg()).unwrap().value;
    assert!((v - 2.0 * PI).abs() < 1e-10 * 2.0 * PI);
}

#[test]
fn yukawa_at_three() {
    let spec = PotentialSpec::yukawa(1.0, 1.0).unwrap();
    let v = potential_ft(&spec, 3.0, &cfg()).unwrap().value;
    assert!((v + 4.0 * PI / 10.0).abs() < 1e-10 * 4.0 * PI / 10.0);
}

#[test]
fn rect_well_against_brute_force() {
    // mpmath: (4π/p)∫₀¹ r·(-1)·sin(10r) dr
    let oracle = -0.098_604_467_161_846_3;
    let spec = PotentialSpec::rect_well(-1.0, 1.0).unwrap();
    let q = radial_ft(&spec, 10.0, &cfg().with_break(1.0)).unwrap().value;
    assert!((q - oracle).abs() < 1e-12, "{q}");
    let a = spec.analytic_ft(10.0).unwrap().unwrap().value;
    assert!((a - oracle).abs() < 1e-13, "{a}");
    // independent composite Simpson on [0, 1]
    let n = 20_000;
    let h = 1.0 / n as f64;
    let mut s = 0.0;
    for i in 0..=n {
        let r = i as f64 * h;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        s += w * r * -(10.0 * r).sin();
    }
    let simpson = 4.0 * PI / 10.0 * s * h / 3.0;
    assert!((simpson - oracle).abs() < 1e-11);
}

#[test]
fn poschl_teller_exact_transform() {
    // exact transform of V0 sech²(κr), derived independently:
    // V(p) = -(2π²V0/(pκ²)) [1/sinh x - x cosh x / sinh² x], x = πp/(2κ)
    let exact = |p: f64| {
        let x = PI * p / 2.0;
        (2.0 * PI * PI / p) * (1.0 / x.sinh() - x * x.cosh() / (x.sinh() * x.sinh()))
    };
    // mpmath quadosc values
    let oracle = [
        (1.0, -6.113_029_723_323_260_3),
        (5.0, -0.021_008_352_680_093_995),
        (10.0, -8.750_452_347_199_510_7e-6),
        (20.0, -1.363_538_023_669_126_7e-12),
        (30.0, -2.077_395_087_292_718_9e-19),
    ];
    let spec = PotentialSpec::poschl_teller(-1.0, 1.0).unwrap();
    for (p, want) in oracle {
        assert!((exact(p) - want).abs() < 1e-12 * want.abs());
        let q = potential_ft(&spec, p, &cfg()).unwrap().value;
        assert!((q - want).abs() < 1e-8 * want.abs(), "p={p}: {q} vs {want}");
    }
}

#[test]
fn poschl_teller_pure_exponential_is_half_the_exact_tail() {
    // the exact tail is 2π³|V0|/κ³ e^{-πp/2κ}: twice the pure exponential form
    let spec = PotentialSpec::poschl_teller(-1.0, 1.0).unwrap();
    let mut last = f64::INFINITY;
    for p in [8.0, 12.0, 16.0, 20.0] {
        let asym = spec.asymptotic_ft(p).unwrap();
        let exact = potential_ft(&spec, p, &cfg()).unwrap().value;
        let dev = (asym / exact - 0.5).abs();
        assert!(dev < last);
        last = dev;
    }
    assert!(last < 0.05);
    let a = spec.analytic_ft(3.0).unwrap().unwrap();
    assert_eq!(a.method, FtMethod::Asymptotic);
}

#[test]
fn tietz_against_mpmath() {
    let spec = PotentialSpec::tietz(10.0, 0.6).unwrap();
    for (p, want) in [
        (0.01, -3_315.887_386_105_451_3),
        (0.1, -87.465_479_681_051_743),
        (1.0, -0.916_523_654_000_009_33),
    ] {
        let q = best_ft(&spec, p, &cfg()).unwrap();
        assert_eq!(q.method, FtMethod::Quadrature);
        assert!((q.value - want).abs() < 1e-9 * want.abs(), "p={p}: {}", q.value);
    }
}

#[test]
fn tietz_correction_coefficient_is_six() {
    let spec = PotentialSpec::tietz(10.0, 0.6).unwrap();
    let tight = cfg().with_rel_tol(1e-12);
    let c1 = tietz_correction_coefficient(&spec, 40.0, &tight).unwrap();
    let c2 = tietz_correction_coefficient(&spec, 80.0, &tight).unwrap();
    assert!((c1 - c2).abs() < 5e-4 * c1.abs());
    assert!((c1 - 6.0).abs() < 1e-3, "{c1}");
}

#[test]
fn linearity_and_scaling() {
    let y1 = PotentialSpec::yukawa(1.0, 1.0).unwrap();
    let y2 = PotentialSpec::yukawa(0.4, 0.5).unwrap();
    let comb = |r: f64| 2.0 * y1.eval_r(r).unwrap() - 3.0 * y2.eval_r(r).unwrap();
    for p in [0.3, 2.0, 11.0] {
        let a = potential_ft(&y1, p, &cfg()).unwrap().value;
        let b = potential_ft(&y2, p, &cfg()).unwrap().value;
        let c = radial_ft(&comb, p, &cfg()).unwrap().value;
        assert!((c - (2.0 * a - 3.0 * b)).abs() < 1e-9 * (2.0 * a.abs() + 3.0 * b.abs()));
    }
    // f(2r) transforms to 2⁻³ F(p/2)
    let scaled = |r: f64| y1.eval_r(2.0 * r).unwrap();
    for p in [0.5, 4.0, 20.0] {
        let s = radial_ft(&scaled, p, &cfg()).unwrap().value;
        let base = potential_ft(&y1, p / 2.0, &cfg()).unwrap().value;
        assert!((s - base / 8.0).abs() < 1e-9 * base.abs() / 8.0);
    }
}

#[test]
fn yukawa_approaches_coulomb() {
    let y = PotentialSpec::yukawa(1.0, 1e-6).unwrap();
    let c = PotentialSpec::coulomb(1.0).unwrap();
    let a = y.analytic_ft(1.0).unwrap().unwrap().value;
    let b = c.analytic_ft(1.0).unwrap().unwrap().value;
    assert!((a / b - 1.0).abs() < 1e-10);
}

#[test]
fn quadrature_refuses_distributions_and_bare_poles() {
    let bubble = PotentialSpec::dirac_bubble(-1.0, 1.0).unwrap();
    assert_eq!(potential_ft(&bubble, 1.0, &cfg()).unwrap_err(), Error::NotPointwise);
    let coul = PotentialSpec::coulomb(1.0).unwrap();
    assert!(matches!(potential_ft(&coul, 1.0, &cfg()), Err(Error::AnalyticOnly(_))));
    // best_ft falls back to the exact forms
    assert!((best_ft(&coul, 2.0, &cfg()).unwrap().value + PI).abs() < 1e-15);
}

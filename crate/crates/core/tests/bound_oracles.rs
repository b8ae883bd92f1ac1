use std::f64::consts::PI;

use photoion_core::boundstate::{derivative_jump, kato_residual, solve_ground, solve_ground_auto, SolverConfig};
use photoion_core::radialft::{ft_wavefunction, FtConfig};
use photoion_core::{Error, PotentialSpec};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn hydrogen_ground_state_values() {
    let spec = PotentialSpec::coulomb(1.0).unwrap();
    let t = std::time::Instant::now();
    let bs = solve_ground_auto(&spec, 1.0).unwrap();
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert!(rel(bs.energy, -0.5) < 1e-8);
    assert!(rel(bs.psi0 * bs.psi0, 1.0 / PI) < 1e-4);
    assert!(rel(bs.psi0_prime / bs.psi0, -1.0) < 1e-6);
    assert!(kato_residual(&bs, &spec).unwrap() < 1e-6);
    assert!((bs.norm_check - 1.0).abs() < 1e-8);
    assert_eq!(bs.u[0], 0.0);
    assert!(bs.u[1..].iter().all(|&u| u > 0.0));
}

#[test]
fn hydrogen_momentum_function() {
    let bs = solve_ground_auto(&PotentialSpec::coulomb(1.0).unwrap(), 1.0).unwrap();
    let cfg = FtConfig::default();
    for k in 1..=40 {
        let p = 0.5 * k as f64;
        let exact = 8.0 * PI.sqrt() / (p * p + 1.0).powi(2);
        let got = ft_wavefunction(&bs, p, &cfg).unwrap().value;
        assert!(rel(got, exact) < 1e-6, "p={p}");
    }
    let got = ft_wavefunction(&bs, 1.0, &cfg).unwrap().value;
    assert!(rel(got, 2.0 * PI.sqrt()) < 1e-6);
}

#[test]
fn energies_against_independent_shooting() {
    // scipy DOP853 shooting at rtol 1e-13
    let cases = [
        (PotentialSpec::yukawa(1.0, 0.2).unwrap(), -0.326_808_511_3, 1e-9),
        (
            PotentialSpec::lorentzian(-3.0, 1.0).unwrap(),
            -0.057_566_961_602_5,
            1e-9,
        ),
        (PotentialSpec::tietz(10.0, 0.6).unwrap(), -0.001_593_206_947_333, 1e-9),
    ];
    for (spec, want, tol) in cases {
        let bs = solve_ground_auto(&spec, 1.0).unwrap();
        assert!(rel(bs.energy, want) < tol, "{}: {}", spec.kind_name(), bs.energy);
    }
}

#[test]
fn poschl_teller_exact_level() {
    // V0 = -λ(λ+1)κ²/2m with λ = 2 has its lowest odd level at -κ²(λ-1)²/2m
    let spec = PotentialSpec::poschl_teller(-3.0, 1.0).unwrap();
    let bs = solve_ground_auto(&spec, 1.0).unwrap();
    assert!(rel(bs.energy, -0.5) < 1e-10, "{}", bs.energy);
}

#[test]
fn delta_shell_matching() {
    let spec = PotentialSpec::dirac_bubble(-2.0, 1.0).unwrap();
    let bs = solve_ground_auto(&spec, 1.0).unwrap();
    let mut k = 2.0_f64;
    for _ in 0..200 {
        k = 2.0 * (1.0 - (-2.0 * k).exp());
    }
    assert!((k - 1.96).abs() < 0.01);
    assert!(rel(bs.mu, k) < 1e-9, "{} vs {k}", bs.mu);
    let j = (1.0 / bs.step).round() as usize;
    let psi_r = bs.u[j] / bs.r[j];
    let jump = derivative_jump(&bs, 1.0).unwrap();
    assert!(rel(jump, 4.0 * psi_r) < 1e-6, "{jump} vs {}", 4.0 * psi_r);
}

#[test]
fn continuous_derivatives_have_no_jump() {
    let well = PotentialSpec::rect_well(-2.0, 1.5).unwrap();
    let bs = solve_ground_auto(&well, 1.0).unwrap();
    assert!(derivative_jump(&bs, 1.5).unwrap().abs() < 1e-6);
    let y = PotentialSpec::yukawa(1.0, 0.2).unwrap();
    let bs = solve_ground_auto(&y, 1.0).unwrap();
    for r in [0.7, 2.0, 5.3] {
        assert!(derivative_jump(&bs, r).unwrap().abs() < 1e-6);
    }
    assert!(matches!(
        derivative_jump(&bs, 2.0 * bs.step),
        Err(Error::InsufficientResolution(_))
    ));
    assert!(matches!(
        derivative_jump(&bs, bs.r_max() - bs.step),
        Err(Error::InsufficientResolution(_))
    ));
}

#[test]
fn cusp_conditions() {
    for (spec, tol) in [
        (PotentialSpec::yukawa(1.0, 0.2).unwrap(), 1e-4),
        (PotentialSpec::tietz(10.0, 0.6).unwrap(), 1e-3),
    ] {
        let bs = solve_ground_auto(&spec, 1.0).unwrap();
        assert!(kato_residual(&bs, &spec).unwrap() < tol);
    }
}

#[test]
fn expectation_and_grid_doubling() {
    let specs = [
        PotentialSpec::coulomb(1.0).unwrap(),
        PotentialSpec::yukawa(1.0, 0.2).unwrap(),
        PotentialSpec::dirac_bubble(-2.0, 1.0).unwrap(),
        PotentialSpec::rect_well(-2.0, 1.5).unwrap(),
        PotentialSpec::lorentzian(-3.0, 1.0).unwrap(),
        PotentialSpec::poschl_teller(-2.0, 1.0).unwrap(),
    ];
    for spec in &specs {
        let cfg = SolverConfig::auto(spec, 1.0).unwrap();
        let a = solve_ground(spec, 1.0, &cfg).unwrap();
        assert!(rel(a.energy_expectation(spec), a.energy) < 1e-8, "{}", spec.kind_name());
        assert!((a.norm_check - 1.0).abs() < 1e-8);
        let mut fine = cfg;
        fine.n_grid *= 2;
        let b = solve_ground(spec, 1.0, &fine).unwrap();
        assert!(rel(b.energy, a.energy) < 10.0 * cfg.tol_energy, "{}", spec.kind_name());
    }
}

#[test]
fn unbound_and_excited_cases() {
    let screened = PotentialSpec::yukawa(1.0, 10.0).unwrap();
    assert_eq!(solve_ground_auto(&screened, 1.0).unwrap_err(), Error::NoBoundState);
    let cfg = SolverConfig {
        r_max: 80.0,
        n_grid: 20_000,
        energy_bracket: (-0.3, -0.01),
        tol_energy: 1e-10,
        match_radius_fraction: 0.3,
    };
    let coulomb = PotentialSpec::coulomb(1.0).unwrap();
    assert!(matches!(
        solve_ground(&coulomb, 1.0, &cfg),
        Err(Error::ExcitedState { nodes: 1 })
    ));
    let repulsive = PotentialSpec::rect_well(1.0, 1.0).unwrap();
    assert!(solve_ground_auto(&repulsive, 1.0).is_err());
}

#[test]
fn solver_config_validation() {
    let spec = PotentialSpec::coulomb(1.0).unwrap();
    let good = SolverConfig::auto(&spec, 1.0).unwrap();
    for bad in [
        SolverConfig { n_grid: 10, ..good },
        SolverConfig {
            energy_bracket: (-0.1, 0.2),
            ..good
        },
        SolverConfig {
            match_radius_fraction: 1.5,
            ..good
        },
        SolverConfig { r_max: -1.0, ..good },
    ] {
        assert!(matches!(
            solve_ground(&spec, 1.0, &bad),
            Err(Error::InvalidParameter { .. })
        ));
    }
}

#[test]
fn bound_state_round_trips_through_json() {
    let bs = solve_ground_auto(&PotentialSpec::dirac_bubble(-2.0, 1.0).unwrap(), 1.0).unwrap();
    let text = serde_json::to_string(&bs).unwrap();
    let back: photoion_core::BoundState = serde_json::from_str(&text).unwrap();
    assert_eq!(back, bs);
}

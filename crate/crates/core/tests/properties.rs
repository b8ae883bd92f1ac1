use std::f64::consts::PI;

use photoion_core::tailfit::{fit_exp_rate, fit_power, TailKind};
use photoion_core::xsec::{fb_correction_factor, sigma_coulomb_like, stobbe_factor, Couplings};
use photoion_core::PotentialSpec;
use proptest::prelude::*;

proptest! {
    #[test]
    fn power_fit_round_trip(amp in 1e-3f64..1e3, exponent in -6.0f64..-0.5) {
        let pts: Vec<(f64, f64)> = (0..12).map(|i| {
            let w = 10f64.powf(1.0 + 0.25 * i as f64);
            (w, amp * w.powf(exponent))
        }).collect();
        let TailKind::Power { exponent: got } = fit_power(&pts, (1.0, 1e5)).unwrap().kind else { unreachable!() };
        prop_assert!((got - exponent).abs() < 1e-10);
    }

    #[test]
    fn exp_rate_is_invariant_under_rescaling(rate in 0.2f64..4.0, q in -3.0f64..1.0, scale in 1e-6f64..1e6) {
        let pts: Vec<(f64, f64)> = (0..15).map(|i| {
            let p = 2.0 + 0.7 * i as f64;
            (p, p.powf(q) * (-rate * p).exp())
        }).collect();
        let scaled: Vec<(f64, f64)> = pts.iter().map(|&(p, v)| (p, scale * v)).collect();
        let a = fit_exp_rate(&pts, (1.0, 20.0)).unwrap();
        let b = fit_exp_rate(&scaled, (1.0, 20.0)).unwrap();
        let (TailKind::Exponential { rate: ra, .. }, TailKind::Exponential { rate: rb, .. }) = (a.kind, b.kind) else { unreachable!() };
        prop_assert!((ra - rb).abs() < 1e-12 * ra.abs().max(1.0));
        prop_assert!((ra - rate).abs() < 1e-8);
    }

    #[test]
    fn stobbe_factor_is_a_damping(xi in 0.0f64..50.0) {
        let f = stobbe_factor(xi);
        prop_assert!(f > 0.0 && f <= 1.0);
        prop_assert_eq!(f == 1.0, xi == 0.0);
        let (_, first_order) = fb_correction_factor(xi).unwrap();
        prop_assert!(f >= first_order);
    }

    #[test]
    fn coulomb_like_scales_with_strength(g in 0.01f64..5.0, k in 1u32..6, omega in 1.0f64..1e4) {
        let c1 = Couplings::default();
        let ck = Couplings { k_electrons: k, ..c1 };
        let a = sigma_coulomb_like(g, 0.3, omega, &c1, false).unwrap().sigma;
        let b = sigma_coulomb_like(2.0 * g, 0.3, omega, &ck, false).unwrap().sigma;
        prop_assert!((b / a - 4.0 * k as f64).abs() < 1e-12 * 4.0 * k as f64);
    }

    #[test]
    fn lorentzian_transform_is_a_pure_exponential(v0 in -5.0f64..-0.1, a in 0.2f64..3.0, p in 0.1f64..40.0) {
        let spec = PotentialSpec::lorentzian(v0, a).unwrap();
        let v = spec.analytic_ft(p).unwrap().unwrap().value;
        let inv = v * p * (p * a).exp();
        prop_assert!((inv / (2.0 * PI * v0 * a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spec_json_round_trip(g in 0.01f64..10.0, lambda in 0.01f64..10.0) {
        let spec = PotentialSpec::yukawa(g, lambda).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: PotentialSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, spec);
    }
}

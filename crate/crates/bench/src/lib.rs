//! Shared fixtures for the benchmarks.

use photoion_core::PotentialSpec;

/// One representative of each catalog kind with a bound ground state.
pub fn catalog() -> Vec<PotentialSpec> {
    vec![
        PotentialSpec::coulomb(1.0).unwrap(),
        PotentialSpec::yukawa(1.0, 0.2).unwrap(),
        PotentialSpec::dirac_bubble(-2.0, 1.0).unwrap(),
        PotentialSpec::rect_well(-2.0, 1.5).unwrap(),
        PotentialSpec::tietz(10.0, 0.6).unwrap(),
        PotentialSpec::lorentzian(-3.0, 1.0).unwrap(),
        PotentialSpec::poschl_teller(-2.0, 1.0).unwrap(),
    ]
}

/// Potentials with a pointwise quadrature transform.
pub fn transformable() -> Vec<PotentialSpec> {
    catalog()
        .into_iter()
        .filter(|s| !matches!(s, PotentialSpec::Coulomb(_) | PotentialSpec::DiracBubble(_)))
        .collect()
}

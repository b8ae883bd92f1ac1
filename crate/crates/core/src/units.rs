//! Physical constants and unit helpers.
//!
//! Everything in this crate is expressed in natural units with ħ = c = 1 and
//! an explicit electron mass `m`. With `m = 1` the unit of length is the
//! reduced Compton wavelength of whatever particle `m` stands for.

/// Fine-structure constant (CODATA 2018).
pub const ALPHA_FS: f64 = 1.0 / 137.035_999_084;

/// Reduced Compton wavelength of the electron, ħ/(m_e c), in femtometres.
pub const ELECTRON_COMPTON_FM: f64 = 386.159_267_96;

/// One barn in fm².
pub const BARN_FM2: f64 = 100.0;

/// Converts an area expressed in units of `1/m²` (natural units) into barns,
/// given the mass scale `m` in units of the electron mass.
pub fn natural_area_to_barn(area: f64, m_in_electron_masses: f64) -> f64 {
    let length_fm = ELECTRON_COMPTON_FM / m_in_electron_masses;
    area * length_fm * length_fm / BARN_FM2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomson_scale_is_sane() {
        // (8π/3) α² (ħ/mc)² is the Thomson cross section, 0.6652 b.
        let thomson = 8.0 * std::f64::consts::PI / 3.0 * ALPHA_FS * ALPHA_FS;
        let barn = natural_area_to_barn(thomson, 1.0);
        assert!((barn - 0.665_245_87).abs() < 1e-6, "{barn}");
    }
}

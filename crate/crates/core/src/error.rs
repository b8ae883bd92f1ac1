use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("distribution not pointwise-evaluable")]
    NotPointwise,

    #[error("classification requires analytic form")]
    NotClassifiable,

    #[error("{0} has no quadrature transform (analytic only)")]
    AnalyticOnly(&'static str),

    #[error("oscillatory tail did not converge after {half_periods} half-periods")]
    NotConverged { half_periods: usize },

    #[error("quadrature error estimate {err:e} exceeds the requested tolerance {tol:e}")]
    ToleranceNotMet { err: f64, tol: f64 },

    #[error("integrand evaluation produced a non-finite value at r = {r}")]
    Evaluation { r: f64 },

    #[error("no bound state found")]
    NoBoundState,

    #[error("bracket contains excited state ({nodes} nodes)")]
    ExcitedState { nodes: usize },

    #[error("insufficient resolution at R = {0}")]
    InsufficientResolution(f64),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("photon energy {omega} is below the asymptotic threshold {threshold} (10 I)")]
    BelowAsymptoticRegime { omega: f64, threshold: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {value}"),
        })
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}

#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Photoionization cross sections at high photon energy from the radial
//! Fourier transform of the binding potential.

pub mod boundstate;
pub mod error;
pub mod potentials;
mod quadrature;
pub mod radialft;
pub mod units;

pub use boundstate::{solve_ground, solve_ground_auto, BoundState, SolverConfig};
pub use error::{Error, Result};
pub use potentials::{PotentialSpec, SingularityCategory, SingularityClass, TailLaw};
pub use radialft::{best_ft, ft_wavefunction, potential_ft, radial_ft, FtConfig, FtMethod, FtResult, RadialFunction};
pub mod tailfit;
pub mod xsec;

pub use tailfit::{ClassificationReport, TailKind, TailModel, TailOptions, Verdict};
pub use xsec::{Couplings, Formula, XsecPoint};

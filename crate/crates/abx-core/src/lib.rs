//! Self-adjoint extensions of the two-dimensional Aharonov-Bohm Hamiltonian.
//!
//! The flux line at the origin admits a four-parameter family of point
//! interactions acting in the s-wave (m = 0) and p-wave (m = -1) channels.
//! This crate evaluates, for any member of that family, the resolvent kernel,
//! the negative-energy spectrum, generalized eigenfunctions and scattering
//! amplitudes.

pub mod error;
pub mod extension;
pub mod krein;
pub mod mat2;
pub mod quad;
pub mod scattering;
pub mod specfun;
pub mod spectrum;

pub use error::{AbxError, Result};
pub use extension::{ExtensionClass, ExtensionParams, FluxAlpha};
pub use specfun::UpperHalfK;

//! Spectra, nodal counts and Pleijel constants of the unit ball.
//!
//! The modules build on each other bottom-up: [`bessel`] evaluates `J_nu`
//! and the radial functions `Xi_l^{(d)}`, [`zeros`] finds their zeros,
//! [`spectrum`] assembles labeled Dirichlet and Neumann spectra, [`courant`]
//! decides which eigenvalues are Courant sharp, and [`pleijel`] computes the
//! constants `gamma(d)`.

pub mod bessel;
pub mod certificate;
pub mod courant;
pub mod error;
pub mod pleijel;
pub mod spectrum;
pub mod zeros;

pub use bessel::Order;
pub use error::{Error, Result};
pub use spectrum::{BoundaryCondition, SpectrumTable};

//! Independent numerical checks for the closed-form spectra.

pub mod audit;
pub mod eigen;
pub mod fiber;
pub mod hermite;

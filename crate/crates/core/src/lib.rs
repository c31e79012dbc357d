//! Exact Dirac spectra of three-dimensional Heisenberg manifolds, flat
//! 2-tori, Berger spheres and odd complex projective spaces, with collapse
//! analysis, numerical oracles and an isospectral-deformation check on a
//! seven-dimensional nilmanifold family.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32`, `f64`);
//! structure constants also accept exact rationals through [`scalar::Field`].
//! The aliases below fix the scalar to `f64`.

pub mod cliff;
pub mod collapse;
pub mod error;
pub mod gornet;
pub mod liealg;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use spectra::{Family, IndexName, Sign, SpinDelta, TorusDelta};

pub type CliffordRep = cliff::CliffordRep<f64>;
pub type CMatrix = linalg::CMatrix<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type MetricLieAlgebra = liealg::MetricLieAlgebra<f64>;
pub type ExactLieAlgebra = liealg::MetricLieAlgebra<num_rational::Rational64>;
pub type ChristoffelTensor = liealg::ChristoffelTensor<f64>;
pub type HeisenbergGeometry = spectra::HeisenbergGeometry<f64>;
pub type Spectrum = spectra::Spectrum<f64>;
pub type SpectrumEntry = spectra::SpectrumEntry<f64>;
pub type Manifold = spectra::Manifold<f64>;
pub type CompareReport = spectra::CompareReport<f64>;
pub type CollapseReport = collapse::CollapseReport<f64>;
pub type FiberBlock = oracle::fiber::FiberBlock<f64>;
pub type Generator = oracle::audit::Generator<f64>;
pub type GornetFamily = gornet::GornetFamily<f64>;
pub type CotangentSample = gornet::CotangentSample<f64>;
pub type Witness = gornet::Witness<f64>;

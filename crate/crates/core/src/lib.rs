//! Decaying series solutions of `psi'' + (E - y^2/4) psi = 0`, eigenvalues of
//! piecewise harmonic ("bathtub") wells, and numerical checks of the related
//! asymptotic series laws.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`.

pub mod acceptance;
pub mod asymptotic;
pub mod bathtub;
pub mod hydrogen;
pub mod numerov;
pub mod roots;
pub mod scalar;
pub mod special;
pub mod weber;

use thiserror::Error;

pub use scalar::{CompensatedSum, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Special(#[from] special::SpecialError),
    #[error(transparent)]
    Weber(#[from] weber::WeberError),
    #[error(transparent)]
    Bathtub(#[from] bathtub::BathtubError),
    #[error(transparent)]
    Numerov(#[from] numerov::NumerovError),
    #[error(transparent)]
    Asymptotic(#[from] asymptotic::AsymptoticError),
    #[error(transparent)]
    Hydrogen(#[from] hydrogen::HydrogenError),
}

pub type Energy64 = weber::Energy<f64>;
pub type WeberPair64 = weber::WeberPair<f64>;
pub type SeriesPolicy64 = weber::SeriesPolicy<f64>;
pub type Eigenstate64 = bathtub::Eigenstate<f64>;
pub type PiecewisePotential64 = bathtub::PiecewisePotential<f64>;
pub type SampledWavefunction64 = bathtub::SampledWavefunction<f64>;
pub type SpectrumRow64 = bathtub::SpectrumRow<f64>;
pub type GridSpec64 = numerov::GridSpec<f64>;
pub type ShootResult64 = numerov::ShootResult<f64>;
pub type AsymptoticReport64 = asymptotic::AsymptoticReport<f64>;
pub type SandwichRecord64 = asymptotic::SandwichRecord<f64>;
pub type RadialSeries64 = hydrogen::RadialSeries<f64>;
pub type RadialAsymptotic64 = hydrogen::RadialAsymptotic<f64>;

//! Tangential electric-field fluctuations between two perfectly conducting
//! plates, compared with free space.
//!
//! Natural units (`ħ = c = 1`): lengths in µm, frequencies stored as `ω/c`
//! in rad·µm⁻¹. `L` is the period of the image sum, twice the plate
//! separation; `x` is the distance from the first plate.

mod autocorr;
mod casimir;
mod kernel;

pub use autocorr::{autocorr_tangential, autocorr_tangential_regularized, AutocorrConfig, ImageKind};
pub use casimir::{
    casimir_bruteforce_term, sigma_casimir_bruteforce, sigma_casimir_bruteforce_with, sigma_casimir_closed,
    sigma_casimir_one_sided, CasimirSummation, Side, DISCONTINUITY_EPS,
};
pub use kernel::{q_direct, q_kernel, q_taylor, Q_TAYLOR_SWITCH};

use std::f64::consts::PI;

use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("invalid geometry: L = {period}, x = {position} (need L > 0 and 0 <= x <= L/2)")]
    InvalidGeometry { period: f64, position: f64 },
    #[error("omega*L = {omega_l} lies on the discontinuity 2*pi*{order}; evaluate one-sided")]
    Discontinuity { omega_l: f64, order: u64 },
    #[error("s = {s} is within {distance:e} of the light-cone singularity of {kind:?} image n = {image}")]
    LightConeSingularity {
        s: f64,
        image: i64,
        kind: ImageKind,
        distance: f64,
    },
    #[error("image truncation must be at least 1")]
    InvalidTruncation,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Parallel-plate configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirGeometry {
    period: f64,
    position: f64,
}

impl CasimirGeometry {
    /// `period` is `L` (twice the plate separation), `position` the distance
    /// from the first plate.
    pub fn new(period: f64, position: f64) -> Result<Self, SpectralError> {
        let ok = period > 0.0 && period.is_finite() && position >= 0.0 && position <= 0.5 * period;
        if !ok {
            return Err(SpectralError::InvalidGeometry { period, position });
        }
        Ok(Self { period, position })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn position(&self) -> f64 {
        self.position
    }

    pub fn plate_separation(&self) -> f64 {
        0.5 * self.period
    }

    /// The same cavity probed at the mirror-image point `L/2 - x`.
    pub fn mirrored(&self) -> Self {
        Self {
            period: self.period,
            position: 0.5 * self.period - self.position,
        }
    }

    pub fn with_position(&self, position: f64) -> Result<Self, SpectralError> {
        Self::new(self.period, position)
    }
}

/// Free-space spectral density `ω³ / 6π²` of one field component.
pub fn sigma_vacuum(omega: f64) -> Result<f64, SpectralError> {
    if !(omega > 0.0) {
        return Err(SpectralError::NonPositiveFrequency(omega));
    }
    Ok(omega.powi(3) / (6.0 * PI * PI))
}

/// `(σ_G - σ_Ω) / σ_Ω`; exactly `-1` wherever the cavity density vanishes.
pub fn normalized_difference(omega: f64, geometry: &CasimirGeometry) -> Result<f64, SpectralError> {
    let vac = sigma_vacuum(omega)?;
    let cas = sigma_casimir_closed(omega, geometry)?;
    Ok((cas - vac) / vac)
}

/// `10 log10(numerator / denominator)`, or `None` when the ratio is not a
/// positive finite number.
pub fn db_ratio(numerator: f64, denominator: f64) -> Option<f64> {
    let ratio = numerator / denominator;
    (ratio > 0.0 && ratio.is_finite()).then(|| 10.0 * ratio.log10())
}

/// Fluctuation suppression `10 log10(σ_G / σ_Ω)` in dB; `None` where
/// `σ_G = 0`.
pub fn suppression_db(omega: f64, geometry: &CasimirGeometry) -> Result<Option<f64>, SpectralError> {
    let vac = sigma_vacuum(omega)?;
    let cas = sigma_casimir_closed(omega, geometry)?;
    Ok(db_ratio(cas, vac))
}

/// Cavity and free-space densities at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub omega: f64,
    pub sigma_casimir: f64,
    pub sigma_vacuum: f64,
    pub normalized_difference: f64,
    pub suppression_db: Option<f64>,
}

impl SpectralSample {
    pub fn evaluate(omega: f64, geometry: &CasimirGeometry) -> Result<Self, SpectralError> {
        let vac = sigma_vacuum(omega)?;
        let cas = sigma_casimir_closed(omega, geometry)?;
        Ok(Self::from_densities(omega, cas, vac))
    }

    pub fn from_densities(omega: f64, sigma_casimir: f64, sigma_vacuum: f64) -> Self {
        Self {
            omega,
            sigma_casimir,
            sigma_vacuum,
            normalized_difference: (sigma_casimir - sigma_vacuum) / sigma_vacuum,
            suppression_db: db_ratio(sigma_casimir, sigma_vacuum),
        }
    }
}

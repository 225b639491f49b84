//! Photodiodes and balanced homodyne detection.
//!
//! A BHD subtracts the currents of two photodiodes at `x̲` and `y̲`. With a
//! strong local oscillator blended in, the difference current `J` probes the
//! field restricted to the LO frequency: its mean sees the one-point
//! function and its variance the spectral density `σ(ω, x)`.

mod bhd;
mod electron;
mod oscillator;
mod photodiode;
mod state;

pub use bhd::{bhd_mean, bhd_variance, variance_db_compare, BhdOutput};
pub use electron::{amplitude_a, DipoleProfile, ElectronModel};
pub use oscillator::{GaussianEnvelope, LoMode, LocalOscillator};
pub use photodiode::{photodiode_response, PhotodiodeOptions};
pub use state::{CoherentComponent, FieldState};

use thiserror::Error;

use crate::numerics::NumericsError;
use crate::smearing::SmearingError;
use crate::spectral::SpectralError;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Which of the two photodiodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    X,
    Y,
}

/// Positions of the two photodiodes. For the cavity state the first
/// coordinate is the distance from the first plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionPoints {
    pub x: Vec3,
    pub y: Vec3,
}

impl DetectionPoints {
    pub fn new(x: Vec3, y: Vec3) -> Self {
        Self { x, y }
    }

    pub fn co_located(p: Vec3) -> Self {
        Self { x: p, y: p }
    }

    pub fn is_co_located(&self) -> bool {
        self.x == self.y
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectorError {
    #[error("invalid electron model: e = {charge}, m* = {effective_mass}")]
    InvalidElectron { charge: f64, effective_mass: f64 },
    #[error("no propagating final state: omega + E0 = {omega} + {ground_energy} <= 0")]
    NoPropagatingFinalState { omega: f64, ground_energy: f64 },
    #[error("invalid local oscillator: {0}")]
    InvalidOscillator(&'static str),
    #[error(
        "the variance requires a pulsed LO; a monochromatic LO produces products of delta functions in frequency"
    )]
    MonochromaticVariance,
    #[error("{operation} is not available for the {state} state")]
    UnsupportedState {
        operation: &'static str,
        state: &'static str,
    },
    #[error("the cavity variance needs a tangential LO polarization, got normal component {0}")]
    NonTangentialPolarization(f64),
    #[error("photodiode response needs E0 <= 0 so that all transition frequencies are non-negative, got {0}")]
    PositiveGroundEnergy(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Smearing(#[from] SmearingError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

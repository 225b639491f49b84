//! Quadrature and series summation shared by the physics modules.

mod quadrature;
mod series;

pub use quadrature::{integrate_adaptive, Integrator};
pub use series::{sum_bilateral, BilateralSummer, SummationReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("integration interval [{a}, {b}] is empty or not finite")]
    EmptyInterval { a: f64, b: f64 },
    #[error("quadrature did not converge after {panels} panels: estimate {estimate}, error {error}")]
    QuadratureNotConverged { estimate: f64, error: f64, panels: usize },
    #[error("series did not converge within {terms_used} terms: partial {partial}, tail {tail_estimate}")]
    SeriesNotConverged {
        partial: f64,
        tail_estimate: f64,
        terms_used: usize,
    },
    #[error("integrand or series produced a non-finite value")]
    NonFinite,
}

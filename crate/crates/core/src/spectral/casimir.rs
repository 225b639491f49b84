//! Cavity spectral density of the tangential field,
//! `σ_G(ω, x) = (ω³/4π²) Σ_n {Q(ωnL) - Q(ω(nL - 2x))}`.
//!
//! Two independent evaluations are provided. The brute-force route sums the
//! image series directly. The closed route resums it with Poisson summation:
//! since `Q(u) = (1/4)∫_{-1}^{1}(1 + κ²) e^{iuκ} dκ` is band-limited, the
//! lattice sum collapses onto the finitely many cavity modes `k` with
//! `2πk < ωL`,
//!
//! `σ_G = (ω³/4π²)(π/θ) Σ_{k=1}^{⌊θ/2π⌋} (1 + (2πk/θ)²) · 2 sin²(2πkx/L)`,
//! with `θ = ωL`. A new mode enters at each `θ = 2πn`, which is where the
//! density jumps.

use std::f64::consts::PI;

use super::{q_kernel, CasimirGeometry, SpectralError};
use crate::numerics::{BilateralSummer, SummationReport};

/// Relative half-width, in units of `2π`, of the excluded neighbourhood of
/// each discontinuity `ωL = 2πn`.
pub const DISCONTINUITY_EPS: f64 = 1e-9;

/// Which one-sided limit to take at a discontinuity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

/// Closed-form density. Fails within [`DISCONTINUITY_EPS`] of `ωL = 2πn`.
pub fn sigma_casimir_closed(omega: f64, geometry: &CasimirGeometry) -> Result<f64, SpectralError> {
    if !(omega > 0.0) {
        return Err(SpectralError::NonPositiveFrequency(omega));
    }
    let theta = omega * geometry.period();
    let q = theta / (2.0 * PI);
    let nearest = q.round();
    if nearest >= 1.0 && (q - nearest).abs() < DISCONTINUITY_EPS {
        return Err(SpectralError::Discontinuity {
            omega_l: theta,
            order: nearest as u64,
        });
    }
    Ok(mode_sum(omega, geometry, q.floor() as u64))
}

/// One-sided limit of the closed form. Away from discontinuities this
/// equals [`sigma_casimir_closed`].
pub fn sigma_casimir_one_sided(omega: f64, geometry: &CasimirGeometry, side: Side) -> Result<f64, SpectralError> {
    if !(omega > 0.0) {
        return Err(SpectralError::NonPositiveFrequency(omega));
    }
    let q = omega * geometry.period() / (2.0 * PI);
    let nearest = q.round();
    let modes = if nearest >= 1.0 && (q - nearest).abs() < DISCONTINUITY_EPS {
        match side {
            Side::Below => nearest as u64 - 1,
            Side::Above => nearest as u64,
        }
    } else {
        q.floor() as u64
    };
    Ok(mode_sum(omega, geometry, modes))
}

fn mode_sum(omega: f64, geometry: &CasimirGeometry, modes: u64) -> f64 {
    let theta = omega * geometry.period();
    let ratio = geometry.position() / geometry.period();
    let sum: f64 = (1..=modes)
        .map(|k| {
            let kf = k as f64;
            let kz = 2.0 * PI * kf / theta;
            // sin²(2πk x/L), reduced mod 1 so nodes at the plates are exact
            let phase = (2.0 * kf * ratio).fract();
            let s = (PI * phase).sin();
            (1.0 + kz * kz) * 2.0 * s * s
        })
        .fold(0.0, |acc, v| acc + v);
    omega.powi(3) / (4.0 * PI * PI) * (PI / theta) * sum
}

/// Summand of the image series for index `n`.
pub fn casimir_bruteforce_term(omega: f64, geometry: &CasimirGeometry, n: i64) -> f64 {
    let nl = n as f64 * geometry.period();
    q_kernel(omega * nl) - q_kernel(omega * (nl - 2.0 * geometry.position()))
}

/// Truncation controls for the brute-force image sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirSummation {
    /// Absolute tolerance on `σ_G`.
    pub tol: f64,
    /// Largest `|n|` evaluated; at most `2·max_image + 1` terms.
    pub max_image: usize,
}

impl CasimirSummation {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            max_image: 50_000,
        }
    }
}

/// Direct summation of the image series. The report's value and tail are
/// scaled to `σ_G` units.
pub fn sigma_casimir_bruteforce(
    omega: f64,
    geometry: &CasimirGeometry,
    tol: f64,
) -> Result<SummationReport, SpectralError> {
    sigma_casimir_bruteforce_with(omega, geometry, CasimirSummation::new(tol))
}

pub fn sigma_casimir_bruteforce_with(
    omega: f64,
    geometry: &CasimirGeometry,
    opts: CasimirSummation,
) -> Result<SummationReport, SpectralError> {
    if !(omega > 0.0) {
        return Err(SpectralError::NonPositiveFrequency(omega));
    }
    let prefactor = omega.powi(3) / (4.0 * PI * PI);
    let summer = BilateralSummer::new(opts.tol / prefactor, opts.max_image);
    let report = summer.sum(|n| casimir_bruteforce_term(omega, geometry, n))?;
    Ok(SummationReport {
        value: prefactor * report.value,
        terms_used: report.terms_used,
        tail_estimate: prefactor * report.tail_estimate,
    })
}

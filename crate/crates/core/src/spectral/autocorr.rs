//! Equal-point autocorrelation `⟨E_y(s, x) E_y(0, x)⟩` of the tangential
//! field in the cavity ground state, as a truncated image sum
//!
//! `(1/π²) Σ_{|n|≤N} [ (a_n² + s²)/(s² - a_n²)³ - (b_n² + s²)/(s² - b_n²)³ ]`
//!
//! with direct images `a_n = nL` and mirror images `b_n = nL - 2x`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{CasimirGeometry, SpectralError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    /// `nL`
    Direct,
    /// `nL - 2x`
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutocorrConfig {
    /// Images are summed over `|n| <= max_image`.
    pub max_image: usize,
    /// Minimum admissible distance `||s| - |image||`.
    pub exclusion_radius: f64,
}

impl AutocorrConfig {
    pub fn new(max_image: usize) -> Self {
        Self {
            max_image,
            exclusion_radius: 1e-9,
        }
    }
}

fn image_term(s2: f64, a: f64) -> f64 {
    let a2 = a * a;
    let d = s2 - a2;
    (a2 + s2) / (d * d * d)
}

/// Truncated image sum at real time separation `s`. Even in `s` exactly,
/// since only `s²` enters.
pub fn autocorr_tangential(s: f64, geometry: &CasimirGeometry, cfg: AutocorrConfig) -> Result<f64, SpectralError> {
    if cfg.max_image < 1 {
        return Err(SpectralError::InvalidTruncation);
    }
    let l = geometry.period();
    let two_x = 2.0 * geometry.position();
    let n_max = cfg.max_image as i64;
    let abs_s = s.abs();

    for n in -n_max..=n_max {
        let nl = n as f64 * l;
        for (kind, image) in [(ImageKind::Direct, nl), (ImageKind::Mirror, nl - two_x)] {
            let distance = (abs_s - image.abs()).abs();
            if distance < cfg.exclusion_radius {
                return Err(SpectralError::LightConeSingularity {
                    s,
                    image: n,
                    kind,
                    distance,
                });
            }
        }
    }

    let s2 = s * s;
    // Pair ±n so the slowly decaying tails cancel as early as possible.
    let mut sum = image_term(s2, 0.0) - image_term(s2, -two_x);
    for n in 1..=n_max {
        let nl = n as f64 * l;
        sum += image_term(s2, nl) + image_term(s2, -nl) - image_term(s2, nl - two_x) - image_term(s2, -nl - two_x);
    }
    Ok(sum / (PI * PI))
}

fn image_term_complex(s2: Complex64, a: f64) -> Complex64 {
    let a2 = a * a;
    let d = s2 - a2;
    (s2 + a2) / (d * d * d)
}

/// The image sum continued to `s - iε` (`ε > 0`). The regularized
/// correlator is smooth on the real axis and equals `∫_0^∞ dω σ_G(ω)
/// e^{-iωs - εω}`.
pub fn autocorr_tangential_regularized(
    s: f64,
    eps: f64,
    geometry: &CasimirGeometry,
    max_image: usize,
) -> Result<Complex64, SpectralError> {
    if max_image < 1 {
        return Err(SpectralError::InvalidTruncation);
    }
    let l = geometry.period();
    let two_x = 2.0 * geometry.position();
    let z = Complex64::new(s, -eps);
    let z2 = z * z;
    let mut sum = image_term_complex(z2, 0.0) - image_term_complex(z2, -two_x);
    for n in 1..=max_image as i64 {
        let nl = n as f64 * l;
        sum += image_term_complex(z2, nl) + image_term_complex(z2, -nl)
            - image_term_complex(z2, nl - two_x)
            - image_term_complex(z2, -nl - two_x);
    }
    Ok(sum / (PI * PI))
}

use std::f64::consts::PI;

use super::{DetectorError, Vec3};

/// Pulsed LO envelope `k(ω) = K exp(-(ω - ω_LO)² / 2σ_k²)` on `ω > 0`,
/// truncated to `|ω - ω_LO| <= widths · σ_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    pub amplitude: Vec3,
    pub bandwidth: f64,
    pub widths: f64,
}

impl GaussianEnvelope {
    pub fn new(amplitude: Vec3, bandwidth: f64) -> Self {
        Self {
            amplitude,
            bandwidth,
            widths: 10.0,
        }
    }

    /// Scalar profile `k(ω)/K`; zero outside the truncated band.
    pub fn profile(&self, omega: f64, center: f64) -> f64 {
        let (lo, hi) = self.support(center);
        if omega <= lo || omega > hi {
            return 0.0;
        }
        let d = (omega - center) / self.bandwidth;
        (-0.5 * d * d).exp()
    }

    /// Truncated band `(lo, hi]`, clipped at zero frequency.
    pub fn support(&self, center: f64) -> (f64, f64) {
        let half = self.widths * self.bandwidth;
        ((center - half).max(0.0), center + half)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoMode {
    /// `F_i = K_i [e^{-iω(τ - t₀)} + c.c.]`
    Monochromatic { amplitude: Vec3 },
    Pulsed(GaussianEnvelope),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOscillator {
    mode: LoMode,
    omega: f64,
    phase_time: f64,
}

impl LocalOscillator {
    pub fn monochromatic(amplitude: Vec3, omega: f64, phase_time: f64) -> Result<Self, DetectorError> {
        Self::new(LoMode::Monochromatic { amplitude }, omega, phase_time)
    }

    pub fn pulsed(envelope: GaussianEnvelope, omega: f64, phase_time: f64) -> Result<Self, DetectorError> {
        Self::new(LoMode::Pulsed(envelope), omega, phase_time)
    }

    pub fn new(mode: LoMode, omega: f64, phase_time: f64) -> Result<Self, DetectorError> {
        if !(omega > 0.0 && omega.is_finite()) || !phase_time.is_finite() {
            return Err(DetectorError::InvalidOscillator("frequency must be positive and finite"));
        }
        if let LoMode::Pulsed(env) = mode {
            if !(env.bandwidth > 0.0 && env.widths > 0.0) {
                return Err(DetectorError::InvalidOscillator("pulse bandwidth must be positive"));
            }
        }
        Ok(Self {
            mode,
            omega,
            phase_time,
        })
    }

    pub fn mode(&self) -> &LoMode {
        &self.mode
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    pub fn phase_time(&self) -> f64 {
        self.phase_time
    }

    /// `t₀` reduced to `[0, 2π/ω)`.
    pub fn reduced_phase_time(&self) -> f64 {
        self.phase_time.rem_euclid(self.period())
    }

    pub fn with_phase_time(&self, phase_time: f64) -> Self {
        Self { phase_time, ..*self }
    }

    /// LO with every amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let scale = |v: Vec3| [v[0] * factor, v[1] * factor, v[2] * factor];
        let mode = match self.mode {
            LoMode::Monochromatic { amplitude } => LoMode::Monochromatic {
                amplitude: scale(amplitude),
            },
            LoMode::Pulsed(env) => LoMode::Pulsed(GaussianEnvelope {
                amplitude: scale(env.amplitude),
                ..env
            }),
        };
        Self { mode, ..*self }
    }
}

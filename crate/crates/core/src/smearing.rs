//! Smooth switching window `g(t)` and its Fourier transform.
//!
//! The window is the difference of two `tanh` edges,
//! `g(t) = (tanh(a (t + T/2)) - tanh(a (t - T/2))) / 2`, essentially one on
//! `[-T/2, T/2]` with edges of steepness `a`. All Fourier transforms use
//! `ĝ(ω) = ∫ e^{iωt} g(t) dt`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::numerics::{Integrator, NumericsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SmearingError {
    #[error("window requires T > 0 and a > 0, got T = {duration}, a = {steepness}")]
    InvalidWindow { duration: f64, steepness: f64 },
    #[error("cutoff {t_cut} too short: g(t_cut) = {value} is not below {tol}")]
    CutoffTooShort { t_cut: f64, value: f64, tol: f64 },
    #[error("durations must be positive and strictly increasing")]
    InvalidDurations,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhWindow {
    duration: f64,
    steepness: f64,
}

impl TanhWindow {
    pub fn new(duration: f64, steepness: f64) -> Result<Self, SmearingError> {
        if !(duration > 0.0 && steepness > 0.0 && duration.is_finite() && steepness.is_finite()) {
            return Err(SmearingError::InvalidWindow {
                duration,
                steepness,
            });
        }
        Ok(Self {
            duration,
            steepness,
        })
    }

    /// Plateau duration `T`.
    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Edge steepness `a`.
    pub fn steepness(&self) -> f64 {
        self.steepness
    }

    pub fn value(&self, t: f64) -> f64 {
        window_value(self, t)
    }

    pub fn ft(&self, omega: f64) -> f64 {
        window_ft_analytic(self, omega)
    }

    /// Upper bound `(π/a) / sinh(π|ω|/2a)` on `|ĝ(ω)|`.
    pub fn ft_envelope(&self, omega: f64) -> f64 {
        let a = self.steepness;
        let x = PI * omega.abs() / (2.0 * a);
        if x == 0.0 {
            f64::INFINITY
        } else {
            (PI / a) / x.sinh()
        }
    }
}

/// `g(t)`, evaluated as `sinh(aT) / (cosh(aT) + cosh(2at))` in a form that
/// neither overflows nor cancels in the tails.
pub fn window_value(w: &TanhWindow, t: f64) -> f64 {
    let at = w.steepness * w.duration;
    let x = 2.0 * w.steepness * t.abs();
    let e2 = (-2.0 * at).exp();
    // numerator and denominator multiplied by 2 e^{-aT}
    let num = -(-2.0 * at).exp_m1();
    let den = 1.0 + e2 + (x - at).exp() + (-x - at).exp();
    num / den
}

/// Analytic transform `ĝ(ω) = (π/a) sin(ωT/2) / sinh(πω/2a)`, with the
/// removable singularity at `ω = 0` resolved to `ĝ(0) = T`.
pub fn window_ft_analytic(w: &TanhWindow, omega: f64) -> f64 {
    let a = w.steepness;
    let half_t = 0.5 * w.duration;
    let k = PI / (2.0 * a);
    // (π/a) · [sin(ωT/2)/ω] · [ω/sinh(kω)]
    (PI / a) * sin_over(omega, half_t) * over_sinh(omega, k)
}

/// `sin(c x) / x`, with its series below the switch.
fn sin_over(x: f64, c: f64) -> f64 {
    let u = c * x;
    if u.abs() < 1e-4 {
        let u2 = u * u;
        c * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0))
    } else {
        u.sin() / x
    }
}

/// `x / sinh(c x)`, with its series below the switch.
fn over_sinh(x: f64, c: f64) -> f64 {
    let u = c * x;
    if u.abs() < 1e-4 {
        let u2 = u * u;
        (1.0 - u2 / 6.0 * (1.0 - 7.0 * u2 / 60.0)) / c
    } else if u.abs() > 700.0 {
        0.0
    } else {
        x / u.sinh()
    }
}

/// Numerical transform `∫_{-t_cut}^{t_cut} cos(ωt) g(t) dt`, used as an
/// independent check of [`window_ft_analytic`]. Requires `g(t_cut) < tol`.
pub fn window_ft_numeric(w: &TanhWindow, omega: f64, t_cut: f64, tol: f64) -> Result<f64, SmearingError> {
    let edge = window_value(w, t_cut);
    if !(t_cut > 0.0) || !(edge < tol) {
        return Err(SmearingError::CutoffTooShort {
            t_cut,
            value: edge,
            tol,
        });
    }
    // Split at the window edges and resolve each oscillation period.
    let half_t = 0.5 * w.duration;
    let mut breaks = vec![0.0];
    if half_t < t_cut {
        breaks.push(half_t);
    }
    breaks.push(t_cut);
    let periods = (omega.abs() * t_cut / (2.0 * PI)).ceil() as usize;
    let integrator = Integrator::with_abs_tol(0.5 * tol)
        .initial_panels(periods.clamp(1, 2000))
        .max_panels(200_000);
    let half = integrator.integrate_with_breaks(|t| (omega * t).cos() * window_value(w, t), &breaks)?;
    Ok(2.0 * half)
}

/// Weak delta-limit diagnostic.
///
/// For each duration `T` returns `|(1/2π) ∫ ĝ_T(ω) f(ω) dω - f(0)|`, the
/// integral taken over `[-omega_cut, omega_cut]` with the analytic `ĝ`.
pub fn delta_limit_check<F: Fn(f64) -> f64>(
    steepness: f64,
    durations: &[f64],
    f: F,
    omega_cut: f64,
    tol: f64,
) -> Result<Vec<f64>, SmearingError> {
    if durations.is_empty()
        || durations.iter().any(|&t| !(t > 0.0))
        || durations.windows(2).any(|p| !(p[0] < p[1]))
    {
        return Err(SmearingError::InvalidDurations);
    }
    let f0 = f(0.0);
    durations
        .iter()
        .map(|&duration| {
            let w = TanhWindow::new(duration, steepness)?;
            let periods = (omega_cut * duration / (4.0 * PI)).ceil() as usize;
            let integrator = Integrator::with_abs_tol(tol)
                .initial_panels(periods.clamp(1, 2000))
                .max_panels(200_000);
            let integral =
                integrator.integrate_with_breaks(|om| window_ft_analytic(&w, om) * f(om), &[-omega_cut, 0.0, omega_cut])?;
            Ok((integral / (2.0 * PI) - f0).abs())
        })
        .collect()
}

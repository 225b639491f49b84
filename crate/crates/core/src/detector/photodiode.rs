//! First-order photodiode response with a smooth switching window,
//!
//! `PD(g, x̲) = ∫d³q ∫ds dτ g(s) g(τ) e^{iω_q(τ - s)} d̄^i(q) d^j(q) ⟨E_i(s) E_j(τ)⟩`.
//!
//! The time integrals become window transforms. Vacuum contributes
//! `4πe² ∫dω_q W(ω_q) ∫_0^∞ dp σ_Ω(p) ĝ(ω_q + p)²` with the atomic weight
//! `W = m* q³ |h(q)|²`; a classical signal `c(t)` adds
//! `(4πe²/3) ∫dω_q W(ω_q) |∫dτ g(τ) e^{iω_q τ} c(τ)|²`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{DetectorError, ElectronModel, FieldState, Site};
use crate::numerics::Integrator;
use crate::smearing::TanhWindow;

/// Truncation and accuracy of the frequency-domain quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotodiodeOptions {
    /// Frequencies are integrated up to `cutoff · a` beyond the last
    /// feature; `ĝ` has decayed by `exp(-π cutoff / 2)` there.
    pub cutoff: f64,
    pub rel_tol: f64,
}

impl Default for PhotodiodeOptions {
    fn default() -> Self {
        Self {
            cutoff: 14.0,
            rel_tol: 1e-8,
        }
    }
}

/// Response of the diode at `site`. Only free-space states are supported.
pub fn photodiode_response(
    state: &FieldState,
    model: &ElectronModel,
    window: &TanhWindow,
    site: Site,
    opts: PhotodiodeOptions,
) -> Result<f64, DetectorError> {
    if model.ground_energy() > 0.0 {
        return Err(DetectorError::PositiveGroundEnergy(model.ground_energy()));
    }
    let components = match state {
        FieldState::MinkowskiVacuum => &[][..],
        FieldState::Coherent { at_x, at_y } => match site {
            Site::X => &at_x[..],
            Site::Y => &at_y[..],
        },
        FieldState::CasimirGround { .. } => {
            return Err(DetectorError::UnsupportedState {
                operation: "photodiode_response",
                state: state.name(),
            })
        }
    };
    let vacuum = vacuum_part(model, window, opts)?;
    if components.is_empty() {
        return Ok(vacuum);
    }

    let e2 = model.charge().powi(2);
    let t = window.duration();
    let w_min = -model.ground_energy();
    let top = components.iter().fold(w_min, |m, c| m.max(c.omega.abs()));
    let w_max = top + opts.cutoff * window.steepness();
    let mut points = vec![w_min];
    let mut peaks: Vec<f64> = components
        .iter()
        .map(|c| c.omega.abs())
        .filter(|&w| w > w_min && w < w_max)
        .collect();
    peaks.sort_by(f64::total_cmp);
    peaks.dedup();
    points.extend(peaks);
    points.push(w_max);

    let signal = |wq: f64| {
        let mut amp = [Complex64::new(0.0, 0.0); 3];
        for c in components {
            let plus = Complex64::from_polar(1.0, c.omega * c.phase_time) * window.ft(wq - c.omega);
            let minus = Complex64::from_polar(1.0, -c.omega * c.phase_time) * window.ft(wq + c.omega);
            let f = 0.5 * (plus + minus);
            for (a, k) in amp.iter_mut().zip(c.amplitude) {
                *a += k * f;
            }
        }
        model.spectral_weight(wq) * amp.iter().map(|z| z.norm_sqr()).sum::<f64>()
    };
    let panels = periods(w_max - w_min, t);
    let integ = Integrator::with_abs_tol(1e-300)
        .rel_tol(opts.rel_tol)
        .initial_panels(panels)
        .max_panels(panels * 8 + 4000);
    let classical = 4.0 * PI * e2 / 3.0 * integ.integrate_with_breaks(signal, &points)?;
    Ok(vacuum + classical)
}

fn periods(span: f64, duration: f64) -> usize {
    (span * duration / (2.0 * PI)).ceil().max(1.0) as usize
}

fn vacuum_part(model: &ElectronModel, window: &TanhWindow, opts: PhotodiodeOptions) -> Result<f64, DetectorError> {
    let span = opts.cutoff * window.steepness();
    let w_min = -model.ground_energy();
    let panels = periods(span, window.duration());
    let inner_integ = Integrator::with_abs_tol(1e-300)
        .rel_tol(0.1 * opts.rel_tol)
        .initial_panels(panels)
        .max_panels(panels * 8 + 4000);
    let inner = |wq: f64| -> Result<f64, DetectorError> {
        let g2 = |p: f64| {
            let g = window.ft(wq + p);
            p * p * p / (6.0 * PI * PI) * g * g
        };
        Ok(inner_integ.integrate(g2, 0.0, span)?)
    };
    // The inner integral smooths the oscillations of ĝ², so the outer
    // integrand only needs modest resolution.
    let outer_integ = Integrator::with_abs_tol(1e-300).rel_tol(opts.rel_tol).initial_panels(8);
    let failure = std::cell::RefCell::new(None);
    let outer = outer_integ.integrate(
        |wq| match inner(wq) {
            Ok(v) => model.spectral_weight(wq) * v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        w_min,
        w_min + span,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(4.0 * PI * model.charge().powi(2) * outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{CoherentComponent, DipoleProfile};
    use approx::assert_relative_eq;

    fn electron() -> ElectronModel {
        ElectronModel::new(1.0, 1.0, -0.5, DipoleProfile::default()).unwrap()
    }

    #[test]
    fn vacuum_response_is_positive_and_sublinear() {
        let m = electron();
        let mut last = f64::INFINITY;
        for t in [5.0, 10.0, 20.0, 40.0] {
            let w = TanhWindow::new(t, 1.0).unwrap();
            let pd = photodiode_response(&FieldState::MinkowskiVacuum, &m, &w, Site::X, Default::default()).unwrap();
            assert!(pd > 0.0);
            assert!(pd / t < last);
            last = pd / t;
        }
    }

    #[test]
    fn vacuum_response_against_grid_oracle() {
        let m = ElectronModel::new(1.0, 1.0, 0.0, DipoleProfile::Constant(1.0)).unwrap();
        let w = TanhWindow::new(1.0, 1.0).unwrap();
        let pd = photodiode_response(&FieldState::MinkowskiVacuum, &m, &w, Site::X, Default::default()).unwrap();
        // midpoint rule on a fine (ω_q, p) grid
        let span = 14.0;
        let n = 1400;
        let h = span / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let wq = (i as f64 + 0.5) * h;
            let q = (2.0 * wq).sqrt();
            for j in 0..n {
                let p = (j as f64 + 0.5) * h;
                let g = w.ft(wq + p);
                acc += q.powi(3) * p.powi(3) / (6.0 * PI * PI) * g * g;
            }
        }
        let oracle = 4.0 * PI * acc * h * h;
        assert_relative_eq!(pd, oracle, max_relative = 1e-4);
    }

    #[test]
    fn coherent_resonant_growth() {
        let m = electron();
        let c = CoherentComponent::new([0.0, 0.3, 0.0], 3.0, 0.7);
        let s = FieldState::Coherent {
            at_x: vec![c],
            at_y: vec![],
        };
        let mut prev = 0.0;
        for t in [5.0, 10.0, 20.0] {
            let w = TanhWindow::new(t, 1.0).unwrap();
            let pd = photodiode_response(&s, &m, &w, Site::X, Default::default()).unwrap();
            let vac = photodiode_response(&FieldState::MinkowskiVacuum, &m, &w, Site::X, Default::default()).unwrap();
            // resonant estimate (4πe²/3) W(ω_s) (C²/4) 2π ∫g²
            let approx = 4.0 * PI / 3.0 * m.spectral_weight(3.0) * 0.09 / 4.0 * 2.0 * PI * (t - 1.0);
            assert_relative_eq!(pd - vac, approx, max_relative = 0.05);
            assert!(pd > prev);
            prev = pd;
            // the other diode sees no signal
            let y = photodiode_response(&s, &m, &w, Site::Y, Default::default()).unwrap();
            assert_relative_eq!(y, vac, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_cavity_and_positive_ground_energy() {
        let w = TanhWindow::new(10.0, 1.0).unwrap();
        assert!(matches!(
            photodiode_response(&FieldState::CasimirGround { period: 2.0 }, &electron(), &w, Site::X, Default::default()),
            Err(DetectorError::UnsupportedState { .. })
        ));
        let m = ElectronModel::new(1.0, 1.0, 0.5, DipoleProfile::default()).unwrap();
        assert!(matches!(
            photodiode_response(&FieldState::MinkowskiVacuum, &m, &w, Site::X, Default::default()),
            Err(DetectorError::PositiveGroundEnergy(_))
        ));
    }
}

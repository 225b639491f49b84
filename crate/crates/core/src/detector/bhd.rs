use std::f64::consts::PI;

use super::{amplitude_a, dot, DetectionPoints, DetectorError, ElectronModel, FieldState, LoMode, LocalOscillator, Vec3};
use crate::numerics::Integrator;
use crate::spectral::{db_ratio, sigma_casimir_one_sided, CasimirGeometry, Side};

/// Components within this relative distance of `ω_LO` survive the exact
/// frequency restriction of a monochromatic LO.
const MATCH_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BhdOutput {
    pub mean: f64,
    /// Full `⟨J²⟩`; only known for free space with co-located diodes.
    pub variance_total: Option<f64>,
    /// `A²(ω_LO) ∫dω (σ(ω, x̲) + σ(ω, y̲)) |k(ω)|²`
    pub variance_position_independent: f64,
}

/// Leading-order mean `⟨J⟩ = A(ω_LO) K·⟨E(t₀, x̲)|_ω + E(t₀, y̲)|_ω⟩`.
///
/// A monochromatic LO keeps the coherent components at exactly `ω_LO`.
/// A pulsed LO weights each component by the envelope at its frequency.
pub fn bhd_mean(
    state: &FieldState,
    lo: &LocalOscillator,
    model: &ElectronModel,
    _positions: &DetectionPoints,
) -> Result<f64, DetectorError> {
    let a = amplitude_a(model, lo.omega())?;
    let (at_x, at_y) = match state {
        FieldState::Coherent { at_x, at_y } => (at_x, at_y),
        _ => return Ok(0.0),
    };
    let t0 = lo.phase_time();
    let restricted: f64 = at_x
        .iter()
        .chain(at_y.iter())
        .map(|c| {
            let (weight, pol) = match lo.mode() {
                LoMode::Monochromatic { amplitude } => {
                    let matched = (c.omega - lo.omega()).abs() <= MATCH_REL * lo.omega();
                    (if matched { 1.0 } else { 0.0 }, *amplitude)
                }
                LoMode::Pulsed(env) => (env.profile(c.omega, lo.omega()), env.amplitude),
            };
            weight * c.projected(&pol) * (c.omega * (t0 - c.phase_time)).cos()
        })
        .sum();
    Ok(a * restricted)
}

/// Mean and variance of `J` for a pulsed LO.
pub fn bhd_variance(
    state: &FieldState,
    lo: &LocalOscillator,
    model: &ElectronModel,
    positions: &DetectionPoints,
) -> Result<BhdOutput, DetectorError> {
    let env = match lo.mode() {
        LoMode::Pulsed(env) => *env,
        LoMode::Monochromatic { .. } => return Err(DetectorError::MonochromaticVariance),
    };
    let a = amplitude_a(model, lo.omega())?;
    let center = lo.omega();
    let profile_sq = |om: f64| {
        let p = env.profile(om, center);
        p * p
    };
    let (weighted, variance_total) = match state {
        FieldState::MinkowskiVacuum => {
            let k2 = dot(&env.amplitude, &env.amplitude);
            let integral = band_integral(|om| om.powi(3) / (6.0 * PI * PI) * profile_sq(om), env.support(center), &[])?;
            let v = a * a * k2 * 2.0 * integral;
            (v, positions.is_co_located().then_some(v))
        }
        FieldState::CasimirGround { period } => {
            if env.amplitude[0] != 0.0 {
                return Err(DetectorError::NonTangentialPolarization(env.amplitude[0]));
            }
            let gx = CasimirGeometry::new(*period, positions.x[0])?;
            let gy = CasimirGeometry::new(*period, positions.y[0])?;
            let k2 = tangential_norm_sq(&env.amplitude);
            let support = env.support(center);
            let breaks = mode_thresholds(*period, support);
            let integral = band_integral(
                |om| {
                    // one-sided evaluation keeps the integrand defined on the
                    // mode thresholds, which are never sampled anyway
                    let sx = sigma_casimir_one_sided(om, &gx, Side::Above).unwrap_or(0.0);
                    let sy = sigma_casimir_one_sided(om, &gy, Side::Above).unwrap_or(0.0);
                    (sx + sy) * profile_sq(om)
                },
                support,
                &breaks,
            )?;
            (a * a * k2 * integral, None)
        }
        FieldState::Coherent { .. } => {
            return Err(DetectorError::UnsupportedState {
                operation: "bhd_variance",
                state: state.name(),
            })
        }
    };
    Ok(BhdOutput {
        mean: bhd_mean(state, lo, model, positions)?,
        variance_total,
        variance_position_independent: weighted,
    })
}

/// `10 log10(V₁/V₂)` of the position-independent variances; `None` when
/// the ratio is not positive and finite.
pub fn variance_db_compare(
    s1: &FieldState,
    s2: &FieldState,
    lo: &LocalOscillator,
    model: &ElectronModel,
    positions: &DetectionPoints,
) -> Result<Option<f64>, DetectorError> {
    let v1 = bhd_variance(s1, lo, model, positions)?.variance_position_independent;
    let v2 = bhd_variance(s2, lo, model, positions)?.variance_position_independent;
    Ok(db_ratio(v1, v2))
}

fn tangential_norm_sq(k: &Vec3) -> f64 {
    k[1] * k[1] + k[2] * k[2]
}

fn mode_thresholds(period: f64, (lo, hi): (f64, f64)) -> Vec<f64> {
    let step = 2.0 * PI / period;
    let first = (lo / step).floor() as u64 + 1;
    (first..)
        .map(|n| n as f64 * step)
        .take_while(|&om| om < hi)
        .collect()
}

fn band_integral<F: Fn(f64) -> f64>(f: F, (lo, hi): (f64, f64), breaks: &[f64]) -> Result<f64, DetectorError> {
    let mut points = Vec::with_capacity(breaks.len() + 2);
    points.push(lo);
    points.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    points.push(hi);
    let integ = Integrator::with_abs_tol(1e-300).rel_tol(1e-12).initial_panels(8);
    Ok(integ.integrate_with_breaks(f, &points)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{CoherentComponent, DipoleProfile, GaussianEnvelope};
    use crate::numerics::integrate_adaptive;
    use crate::spectral::{sigma_casimir_closed, sigma_vacuum};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn electron() -> ElectronModel {
        ElectronModel::new(1.0, 1.0, 0.0, DipoleProfile::Constant(1.0)).unwrap()
    }

    fn pulsed(omega: f64, bandwidth: f64) -> LocalOscillator {
        LocalOscillator::pulsed(GaussianEnvelope::new([0.0, 1.0, 0.0], bandwidth), omega, 0.0).unwrap()
    }

    fn midplane() -> DetectionPoints {
        DetectionPoints::co_located([0.5, 0.0, 0.0])
    }

    /// Restriction of a sampled one-point function to frequency `omega`:
    /// `(2/P) ∫_0^P E(t) cos(ω (t - t₀)) dt` over a common period `P`.
    fn projection_oracle(state: &FieldState, site: crate::detector::Site, pol: &Vec3, omega: f64, t0: f64, periods: f64) -> f64 {
        let p = periods * 2.0 * PI / omega;
        let f = |t: f64| dot(&state.one_point(site, t), pol) * (omega * (t - t0)).cos();
        2.0 / p * integrate_adaptive(f, 0.0, p, 1e-13).unwrap()
    }

    #[test]
    fn vacuum_like_states_have_zero_mean() {
        let lo = LocalOscillator::monochromatic([0.0, 1.0, 0.0], 2.0, 0.3).unwrap();
        for s in [FieldState::MinkowskiVacuum, FieldState::CasimirGround { period: 2.0 }] {
            assert_eq!(bhd_mean(&s, &lo, &electron(), &midplane()).unwrap(), 0.0);
            assert_eq!(bhd_mean(&s, &pulsed(2.0, 0.1), &electron(), &midplane()).unwrap(), 0.0);
        }
    }

    #[test]
    fn coherent_mean_matches_projection_oracle() {
        let om = 2.0;
        let k: Vec3 = [0.0, 0.7, 0.2];
        let state = FieldState::Coherent {
            at_x: vec![
                CoherentComponent::new([0.0, 1.3, -0.4], om, 0.21),
                CoherentComponent::new([0.0, 5.0, 1.0], 2.0 * om, 0.0),
            ],
            at_y: vec![CoherentComponent::new([0.3, 0.8, 0.1], om, -0.5)],
        };
        let m = electron();
        let a = amplitude_a(&m, om).unwrap();
        for i in 0..64 {
            let t0 = -1.0 + 0.1 * i as f64;
            let lo = LocalOscillator::monochromatic(k, om, t0).unwrap();
            let mean = bhd_mean(&state, &lo, &m, &midplane()).unwrap();
            let oracle = a
                * (projection_oracle(&state, crate::detector::Site::X, &k, om, t0, 2.0)
                    + projection_oracle(&state, crate::detector::Site::Y, &k, om, t0, 2.0));
            assert_abs_diff_eq!(mean, oracle, epsilon = 1e-9 * a);
        }
    }

    #[test]
    fn coherent_mean_is_periodic_and_flips() {
        let om = 1.7;
        let c = CoherentComponent::new([0.0, 1.0, 0.0], om, 0.4);
        let state = FieldState::Coherent {
            at_x: vec![c],
            at_y: vec![c],
        };
        let lo = LocalOscillator::monochromatic([0.0, 2.0, 0.0], om, 0.9).unwrap();
        let m = electron();
        let base = bhd_mean(&state, &lo, &m, &midplane()).unwrap();
        let shifted = bhd_mean(&state, &lo.with_phase_time(0.9 + lo.period()), &m, &midplane()).unwrap();
        let half = bhd_mean(&state, &lo.with_phase_time(0.9 + 0.5 * lo.period()), &m, &midplane()).unwrap();
        assert_relative_eq!(base, shifted, max_relative = 1e-12);
        assert_relative_eq!(base, -half, max_relative = 1e-12);
        let a = amplitude_a(&m, om).unwrap();
        assert_relative_eq!(base, 2.0 * a * 2.0 * (om * 0.5).cos(), max_relative = 1e-14);
    }

    #[test]
    fn monochromatic_variance_is_rejected() {
        let lo = LocalOscillator::monochromatic([0.0, 1.0, 0.0], 2.0, 0.0).unwrap();
        assert_eq!(
            bhd_variance(&FieldState::MinkowskiVacuum, &lo, &electron(), &midplane()),
            Err(DetectorError::MonochromaticVariance)
        );
    }

    #[test]
    fn coherent_variance_and_normal_polarization_are_rejected() {
        let coh = FieldState::Coherent {
            at_x: vec![],
            at_y: vec![],
        };
        assert!(matches!(
            bhd_variance(&coh, &pulsed(2.0, 0.1), &electron(), &midplane()),
            Err(DetectorError::UnsupportedState { .. })
        ));
        let lo = LocalOscillator::pulsed(GaussianEnvelope::new([1.0, 0.0, 0.0], 0.1), 2.0, 0.0).unwrap();
        assert!(matches!(
            bhd_variance(&FieldState::CasimirGround { period: 2.0 }, &lo, &electron(), &midplane()),
            Err(DetectorError::NonTangentialPolarization(_))
        ));
    }

    #[test]
    fn vacuum_variance_against_direct_quadrature() {
        let om = 3.0;
        let bw = 0.2;
        let lo = pulsed(om, bw);
        let m = electron();
        let out = bhd_variance(&FieldState::MinkowskiVacuum, &lo, &m, &midplane()).unwrap();
        let a = amplitude_a(&m, om).unwrap();
        let oracle = integrate_adaptive(
            |w| sigma_vacuum(w).unwrap() * (-(w - om).powi(2) / (bw * bw)).exp(),
            om - 10.0 * bw,
            om + 10.0 * bw,
            1e-14,
        )
        .unwrap();
        assert_relative_eq!(out.variance_position_independent, 2.0 * a * a * oracle, max_relative = 1e-10);
        assert_eq!(out.variance_total, Some(out.variance_position_independent));
        assert_eq!(out.mean, 0.0);

        let apart = DetectionPoints::new([0.5, 0.0, 0.0], [3.0, 1.0, 0.0]);
        let out2 = bhd_variance(&FieldState::MinkowskiVacuum, &lo, &m, &apart).unwrap();
        assert_eq!(out2.variance_total, None);
        assert_eq!(out2.variance_position_independent, out.variance_position_independent);
    }

    #[test]
    fn narrow_band_limit() {
        let om = 1.5 * PI;
        let m = electron();
        let a = amplitude_a(&m, om).unwrap();
        let norm = |bw: f64| bw * PI.sqrt();
        let mut last_vac = f64::INFINITY;
        let mut last_cas = f64::INFINITY;
        let g = CasimirGeometry::new(2.0, 0.5).unwrap();
        for bw in [0.2, 0.1, 0.05] {
            let lo = pulsed(om, bw);
            let vac = bhd_variance(&FieldState::MinkowskiVacuum, &lo, &m, &midplane()).unwrap();
            let cas = bhd_variance(&FieldState::CasimirGround { period: 2.0 }, &lo, &m, &midplane()).unwrap();
            let ev = (vac.variance_position_independent / (2.0 * a * a * norm(bw)) / sigma_vacuum(om).unwrap() - 1.0).abs();
            let ec = (cas.variance_position_independent / (2.0 * a * a * norm(bw))
                / sigma_casimir_closed(om, &g).unwrap()
                - 1.0)
                .abs();
            assert!(ev < last_vac && ec < last_cas, "{bw}: {ev} {ec}");
            last_vac = ev;
            last_cas = ec;
        }
        assert!(last_vac < 2e-3 && last_cas < 2e-3);
    }

    #[test]
    fn sub_cutoff_cavity_variance_vanishes() {
        let lo = pulsed(1.0, 0.05);
        let cas = bhd_variance(&FieldState::CasimirGround { period: 2.0 }, &lo, &electron(), &midplane()).unwrap();
        assert_eq!(cas.variance_position_independent, 0.0);
        assert_eq!(cas.variance_total, None);
        let db = variance_db_compare(
            &FieldState::CasimirGround { period: 2.0 },
            &FieldState::MinkowskiVacuum,
            &lo,
            &electron(),
            &midplane(),
        )
        .unwrap();
        assert_eq!(db, None);
    }

    #[test]
    fn scaling_and_db_invariance() {
        let lo = pulsed(1.5 * PI, 0.1);
        let m = electron();
        let s = FieldState::CasimirGround { period: 2.0 };
        let v1 = bhd_variance(&s, &lo, &m, &midplane()).unwrap().variance_position_independent;
        let v2 = bhd_variance(&s, &lo.scaled(3.0), &m, &midplane()).unwrap().variance_position_independent;
        assert_relative_eq!(v2, 9.0 * v1, max_relative = 1e-13);

        let db = variance_db_compare(&s, &FieldState::MinkowskiVacuum, &lo, &m, &midplane()).unwrap().unwrap();
        let db2 = variance_db_compare(
            &s,
            &FieldState::MinkowskiVacuum,
            &lo.scaled(3.0),
            &m.with_profile_scaled(10f64.sqrt()),
            &midplane(),
        )
        .unwrap()
        .unwrap();
        assert_abs_diff_eq!(db, db2, epsilon = 1e-12);
        // narrow band: 13/9 above vacuum
        assert_abs_diff_eq!(db, 10.0 * (13.0f64 / 9.0).log10(), epsilon = 1e-2);
        let same = variance_db_compare(&s, &s, &lo, &m, &midplane()).unwrap().unwrap();
        assert_eq!(same, 0.0);
    }

    #[test]
    fn thresholds_inside_band() {
        assert_eq!(mode_thresholds(2.0, (2.0, 7.0)), vec![PI, 2.0 * PI]);
        assert!(mode_thresholds(2.0, (0.0, 3.0)).is_empty());
    }
}

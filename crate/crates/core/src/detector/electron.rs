use std::f64::consts::PI;

use super::DetectorError;

/// Radial profile `h(q)` of the dipole matrix element `d^i(q) = e q^i h(q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DipoleProfile {
    Constant(f64),
    /// `amplitude · exp(-q² / 2 width²)`
    Gaussian { amplitude: f64, width: f64 },
}

impl DipoleProfile {
    pub fn eval(&self, q: f64) -> f64 {
        match *self {
            DipoleProfile::Constant(c) => c,
            DipoleProfile::Gaussian { amplitude, width } => amplitude * (-0.5 * (q / width).powi(2)).exp(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            DipoleProfile::Constant(c) => DipoleProfile::Constant(c * factor),
            DipoleProfile::Gaussian { amplitude, width } => DipoleProfile::Gaussian {
                amplitude: amplitude * factor,
                width,
            },
        }
    }
}

impl Default for DipoleProfile {
    fn default() -> Self {
        DipoleProfile::Gaussian {
            amplitude: 1.0,
            width: 2.0,
        }
    }
}

/// Photodiode electron: a bound state of energy `E0` excited into plane
/// waves with transition frequency `ω_q = q²/2m* - E0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronModel {
    charge: f64,
    effective_mass: f64,
    ground_energy: f64,
    profile: DipoleProfile,
}

impl ElectronModel {
    pub fn new(
        charge: f64,
        effective_mass: f64,
        ground_energy: f64,
        profile: DipoleProfile,
    ) -> Result<Self, DetectorError> {
        if charge == 0.0 || !charge.is_finite() || !(effective_mass > 0.0) || !ground_energy.is_finite() {
            return Err(DetectorError::InvalidElectron {
                charge,
                effective_mass,
            });
        }
        if let DipoleProfile::Gaussian { width, .. } = profile {
            if !(width > 0.0) {
                return Err(DetectorError::InvalidElectron {
                    charge,
                    effective_mass,
                });
            }
        }
        Ok(Self {
            charge,
            effective_mass,
            ground_energy,
            profile,
        })
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn effective_mass(&self) -> f64 {
        self.effective_mass
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    pub fn profile(&self) -> DipoleProfile {
        self.profile
    }

    /// Same electron with `h` multiplied by `factor`, which scales `A` by
    /// `factor²`.
    pub fn with_profile_scaled(&self, factor: f64) -> Self {
        Self {
            profile: self.profile.scaled(factor),
            ..*self
        }
    }

    /// `q₀ = sqrt(2 m* (ω + E0))`.
    pub fn resonant_momentum(&self, omega: f64) -> Result<f64, DetectorError> {
        let energy = omega + self.ground_energy;
        if !(energy > 0.0) {
            return Err(DetectorError::NoPropagatingFinalState {
                omega,
                ground_energy: self.ground_energy,
            });
        }
        Ok((2.0 * self.effective_mass * energy).sqrt())
    }

    pub fn transition_frequency(&self, q: f64) -> f64 {
        q * q / (2.0 * self.effective_mass) - self.ground_energy
    }

    /// Atomic weight `m* q³ |h(q)|²` per unit transition frequency, with
    /// `q` the momentum at which `ω_q = omega`.
    pub(crate) fn spectral_weight(&self, omega: f64) -> f64 {
        let energy = omega + self.ground_energy;
        if energy <= 0.0 {
            return 0.0;
        }
        let q = (2.0 * self.effective_mass * energy).sqrt();
        let h = self.profile.eval(q);
        self.effective_mass * q * q * q * h * h
    }
}

/// `A(ω) = (16 e² π³ / 3) m* q₀³ |h(q₀)|²`.
pub fn amplitude_a(model: &ElectronModel, omega: f64) -> Result<f64, DetectorError> {
    let q0 = model.resonant_momentum(omega)?;
    let h = model.profile.eval(q0);
    Ok(16.0 * model.charge.powi(2) * PI.powi(3) / 3.0 * model.effective_mass * q0.powi(3) * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(profile: DipoleProfile) -> ElectronModel {
        ElectronModel::new(1.0, 1.0, 0.0, profile).unwrap()
    }

    #[test]
    fn amplitude_reference_value() {
        let m = unit(DipoleProfile::Constant(1.0));
        assert_relative_eq!(m.resonant_momentum(2.0).unwrap(), 2.0);
        let a = amplitude_a(&m, 2.0).unwrap();
        assert_relative_eq!(a, 128.0 * PI.powi(3) / 3.0, max_relative = 1e-14);
        assert_relative_eq!(a, 1322.93, max_relative = 1e-5);
    }

    #[test]
    fn vanishing_matrix_element() {
        assert_eq!(amplitude_a(&unit(DipoleProfile::Constant(0.0)), 2.0).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_in_profile() {
        let m = unit(DipoleProfile::default());
        let a = amplitude_a(&m, 1.3).unwrap();
        let a2 = amplitude_a(&m.with_profile_scaled(2.0), 1.3).unwrap();
        assert_relative_eq!(a2, 4.0 * a, max_relative = 1e-14);
    }

    #[test]
    fn below_threshold_is_rejected() {
        let m = ElectronModel::new(1.0, 1.0, -1.0, DipoleProfile::Constant(1.0)).unwrap();
        assert!(matches!(
            amplitude_a(&m, 0.5),
            Err(DetectorError::NoPropagatingFinalState { .. })
        ));
        assert!(amplitude_a(&m, 1.5).unwrap() > 0.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ElectronModel::new(0.0, 1.0, 0.0, DipoleProfile::Constant(1.0)).is_err());
        assert!(ElectronModel::new(1.0, 0.0, 0.0, DipoleProfile::Constant(1.0)).is_err());
        assert!(ElectronModel::new(
            1.0,
            1.0,
            0.0,
            DipoleProfile::Gaussian {
                amplitude: 1.0,
                width: 0.0
            }
        )
        .is_err());
    }

    #[test]
    fn weight_consistent_with_amplitude() {
        let m = ElectronModel::new(0.7, 1.3, -0.2, DipoleProfile::default()).unwrap();
        let om = 2.1;
        let a = amplitude_a(&m, om).unwrap();
        assert_relative_eq!(
            a,
            16.0 * 0.49 * PI.powi(3) / 3.0 * m.spectral_weight(om),
            max_relative = 1e-13
        );
        let q0 = m.resonant_momentum(om).unwrap();
        assert_relative_eq!(m.transition_frequency(q0), om, max_relative = 1e-14);
    }
}

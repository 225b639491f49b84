use super::{dot, Vec3};

/// One monochromatic component of a classical (coherent-state) field,
/// `⟨E(t)⟩ = C cos(ω (t - t_s))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentComponent {
    pub amplitude: Vec3,
    pub omega: f64,
    pub phase_time: f64,
}

impl CoherentComponent {
    pub fn new(amplitude: Vec3, omega: f64, phase_time: f64) -> Self {
        Self {
            amplitude,
            omega,
            phase_time,
        }
    }

    pub fn field(&self, t: f64) -> Vec3 {
        let c = (self.omega * (t - self.phase_time)).cos();
        [self.amplitude[0] * c, self.amplitude[1] * c, self.amplitude[2] * c]
    }

    pub fn projected(&self, polarization: &Vec3) -> f64 {
        dot(&self.amplitude, polarization)
    }
}

/// Field states whose correlation data are available.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldState {
    MinkowskiVacuum,
    /// Classical signal given separately at the two detection points.
    Coherent {
        at_x: Vec<CoherentComponent>,
        at_y: Vec<CoherentComponent>,
    },
    /// Ground state between plates; the plate-normal coordinate of each
    /// detection point is its first component.
    CasimirGround { period: f64 },
}

impl FieldState {
    pub fn name(&self) -> &'static str {
        match self {
            FieldState::MinkowskiVacuum => "minkowski_vacuum",
            FieldState::Coherent { .. } => "coherent",
            FieldState::CasimirGround { .. } => "casimir_ground",
        }
    }

    pub fn has_vanishing_one_point(&self) -> bool {
        match self {
            FieldState::MinkowskiVacuum | FieldState::CasimirGround { .. } => true,
            FieldState::Coherent { at_x, at_y } => at_x.is_empty() && at_y.is_empty(),
        }
    }

    /// One-point function at detection point `x` (`site = Site::X`) or `y`.
    pub fn one_point(&self, site: super::Site, t: f64) -> Vec3 {
        match self {
            FieldState::Coherent { at_x, at_y } => {
                let comps = match site {
                    super::Site::X => at_x,
                    super::Site::Y => at_y,
                };
                comps.iter().fold([0.0; 3], |acc, c| {
                    let f = c.field(t);
                    [acc[0] + f[0], acc[1] + f[1], acc[2] + f[2]]
                })
            }
            _ => [0.0; 3],
        }
    }
}

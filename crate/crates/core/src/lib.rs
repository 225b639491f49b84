#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod detector;
pub mod numerics;
pub mod smearing;
pub mod spectral;

pub use detector::{
    amplitude_a, bhd_mean, bhd_variance, photodiode_response, variance_db_compare, BhdOutput, DetectionPoints,
    DetectorError, DipoleProfile, ElectronModel, FieldState, LocalOscillator, Site,
};
pub use numerics::{integrate_adaptive, sum_bilateral, NumericsError};
pub use smearing::{window_ft_analytic, TanhWindow};
pub use spectral::{sigma_casimir_closed, sigma_vacuum, CasimirGeometry, SpectralError};

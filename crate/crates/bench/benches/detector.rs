use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use homodyne_core::detector::{
    bhd_variance, photodiode_response, DetectionPoints, DipoleProfile, ElectronModel, FieldState, GaussianEnvelope,
    LocalOscillator, PhotodiodeOptions, Site,
};
use homodyne_core::smearing::TanhWindow;

fn variance(c: &mut Criterion) {
    let m = ElectronModel::new(1.0, 1.0, 0.0, DipoleProfile::default()).unwrap();
    let lo = LocalOscillator::pulsed(GaussianEnvelope::new([0.0, 1.0, 0.0], 0.1), 1.5 * PI, 0.0).unwrap();
    let pts = DetectionPoints::co_located([0.5, 0.0, 0.0]);
    let cavity = FieldState::CasimirGround { period: 2.0 };
    c.bench_function("bhd_variance casimir", |b| b.iter(|| bhd_variance(black_box(&cavity), &lo, &m, &pts)));
    c.bench_function("bhd_variance vacuum", |b| {
        b.iter(|| bhd_variance(black_box(&FieldState::MinkowskiVacuum), &lo, &m, &pts))
    });
}

fn photodiode(c: &mut Criterion) {
    let m = ElectronModel::new(1.0, 1.0, -0.5, DipoleProfile::default()).unwrap();
    let w = TanhWindow::new(10.0, 1.0).unwrap();
    let mut group = c.benchmark_group("photodiode");
    group.sample_size(10);
    group.bench_function("vacuum T=10", |b| {
        b.iter(|| photodiode_response(black_box(&FieldState::MinkowskiVacuum), &m, &w, Site::X, PhotodiodeOptions::default()))
    });
    group.finish();
}

criterion_group!(benches, variance, photodiode);
criterion_main!(benches);

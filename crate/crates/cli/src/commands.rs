use std::f64::consts::PI;

use rayon::prelude::*;

use homodyne_core::detector::{
    bhd_mean, bhd_variance, variance_db_compare, CoherentComponent, DetectionPoints, DipoleProfile, ElectronModel,
    FieldState, GaussianEnvelope, LocalOscillator,
};
use homodyne_core::smearing::{window_ft_analytic, window_ft_numeric, TanhWindow};
use homodyne_core::spectral::{
    autocorr_tangential, sigma_casimir_bruteforce, sigma_casimir_closed, sigma_vacuum, AutocorrConfig,
    CasimirGeometry, SpectralError, SpectralSample,
};

use crate::config::{linspace, Command, Settings};
use crate::output::{Cell, Table};
use crate::CliError;

pub fn run(settings: &Settings) -> Result<Table, CliError> {
    match settings.command {
        Command::Spectrum => spectrum(settings),
        Command::Suppression => suppression(settings),
        Command::Autocorr => autocorr(settings),
        Command::Smearing => smearing(settings),
        Command::Bhd => bhd(settings),
    }
}

fn geometries(s: &Settings) -> Result<Vec<CasimirGeometry>, CliError> {
    s.x.iter()
        .map(|&x| CasimirGeometry::new(s.period, x).map_err(|e| CliError::Validation(format!("x: {e}"))))
        .collect()
}

/// `(ω, geometry)` pairs in ω-major order.
fn omega_major(s: &Settings) -> Result<Vec<(f64, CasimirGeometry)>, CliError> {
    let geoms = geometries(s)?;
    Ok(linspace(s.omega_min, s.omega_max, s.omega_count)
        .into_iter()
        .flat_map(|om| geoms.iter().map(move |g| (om, *g)))
        .collect())
}

fn discontinuity(e: &SpectralError) -> Cell {
    match e {
        SpectralError::Discontinuity { order, .. } => Cell::Int(*order),
        _ => Cell::Empty,
    }
}

fn spectrum(s: &Settings) -> Result<Table, CliError> {
    let mut columns = vec![
        "omega_per_um",
        "x_um",
        "sigma_casimir",
        "sigma_vacuum",
        "normalized_difference",
        "discontinuity_n",
    ];
    if s.bruteforce {
        columns.push("sigma_bruteforce");
    }
    columns.push("error");
    let rows = omega_major(s)?
        .par_iter()
        .map(|&(om, g)| {
            let mut row = match SpectralSample::evaluate(om, &g) {
                Ok(smp) => vec![
                    om.into(),
                    g.position().into(),
                    smp.sigma_casimir.into(),
                    smp.sigma_vacuum.into(),
                    smp.normalized_difference.into(),
                    Cell::Empty,
                ],
                Err(e) => {
                    let mut r = vec![om.into(), g.position().into(), Cell::Empty];
                    r.push(sigma_vacuum(om).ok().into());
                    r.push(Cell::Empty);
                    r.push(discontinuity(&e));
                    r.push(Cell::Text(e.to_string()));
                    if s.bruteforce {
                        r.insert(6, Cell::Empty);
                    }
                    return r;
                }
            };
            if s.bruteforce {
                let tol = s.tol * sigma_vacuum(om).unwrap_or(1.0);
                match sigma_casimir_bruteforce(om, &g, tol) {
                    Ok(r) => {
                        row.push(r.value.into());
                        row.push(Cell::Empty);
                    }
                    Err(e) => {
                        row.push(Cell::Empty);
                        row.push(Cell::Text(e.to_string()));
                    }
                }
            } else {
                row.push(Cell::Empty);
            }
            row
        })
        .collect();
    Ok(Table { columns, rows })
}

/// One suppression row from the two densities.
pub fn suppression_row(omega: f64, x: f64, sigma_casimir: f64, sigma_vacuum: f64) -> Vec<Cell> {
    let smp = SpectralSample::from_densities(omega, sigma_casimir, sigma_vacuum);
    vec![
        omega.into(),
        x.into(),
        smp.suppression_db.into(),
        smp.normalized_difference.into(),
        Cell::Empty,
        Cell::Empty,
    ]
}

fn suppression(s: &Settings) -> Result<Table, CliError> {
    let columns = vec![
        "omega_per_um",
        "x_um",
        "suppression_db",
        "normalized_difference",
        "discontinuity_n",
        "error",
    ];
    let rows = omega_major(s)?
        .par_iter()
        .map(|&(om, g)| {
            let densities = sigma_vacuum(om).and_then(|v| Ok((sigma_casimir_closed(om, &g)?, v)));
            match densities {
                Ok((cas, vac)) => suppression_row(om, g.position(), cas, vac),
                Err(e) => vec![
                    om.into(),
                    g.position().into(),
                    Cell::Empty,
                    Cell::Empty,
                    discontinuity(&e),
                    Cell::Text(e.to_string()),
                ],
            }
        })
        .collect();
    Ok(Table { columns, rows })
}

fn autocorr(s: &Settings) -> Result<Table, CliError> {
    let geoms = geometries(s)?;
    let cfg = AutocorrConfig::new(s.max_image);
    let points: Vec<(f64, CasimirGeometry)> = linspace(s.s_min, s.s_max, s.s_count)
        .into_iter()
        .flat_map(|t| geoms.iter().map(move |g| (t, *g)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(t, g)| match autocorr_tangential(t, &g, cfg) {
            Ok(v) => vec![t.into(), g.position().into(), v.into(), Cell::Empty],
            Err(e) => vec![t.into(), g.position().into(), Cell::Empty, Cell::Text(e.to_string())],
        })
        .collect();
    Ok(Table {
        columns: vec!["s_um", "x_um", "correlator", "error"],
        rows,
    })
}

fn smearing(s: &Settings) -> Result<Table, CliError> {
    let w = TanhWindow::new(s.duration, s.a).map_err(|e| CliError::Validation(e.to_string()))?;
    // g decays like exp(-2a(t - T/2)) beyond the plateau
    let abs_tol = 1e-3 * s.tol * s.duration;
    let t_cut = 0.5 * s.duration + ((1.0 / abs_tol).ln() + 2.0) / (2.0 * s.a);
    let rows = linspace(s.omega_min, s.omega_max, s.omega_count)
        .par_iter()
        .map(|&om| {
            let analytic = window_ft_analytic(&w, om);
            match window_ft_numeric(&w, om, t_cut, abs_tol) {
                Ok(nu) => vec![om.into(), analytic.into(), nu.into(), (analytic - nu).abs().into(), Cell::Empty],
                Err(e) => vec![om.into(), analytic.into(), Cell::Empty, Cell::Empty, Cell::Text(e.to_string())],
            }
        })
        .collect();
    Ok(Table {
        columns: vec!["omega", "g_hat_analytic", "g_hat_numeric", "abs_difference", "error"],
        rows,
    })
}

fn bhd(s: &Settings) -> Result<Table, CliError> {
    let compute = |e: homodyne_core::detector::DetectorError| CliError::Compute(e.to_string());
    let model = ElectronModel::new(
        s.charge,
        s.mass,
        s.e0,
        DipoleProfile::Gaussian {
            amplitude: 1.0,
            width: s.dipole_width,
        },
    )
    .map_err(|e| CliError::Validation(e.to_string()))?;
    let env = GaussianEnvelope::new([0.0, s.lo_amplitude, 0.0], s.bandwidth);
    let lo = LocalOscillator::pulsed(env, s.omega_lo, 0.0).map_err(|e| CliError::Validation(e.to_string()))?;
    let x0 = s.x[0];
    let points = DetectionPoints::co_located([x0, 0.0, 0.0]);

    let signal = CoherentComponent::new([0.0, s.signal_amplitude, 0.0], s.omega_lo, s.signal_phase_time);
    let coherent = FieldState::Coherent {
        at_x: vec![signal],
        at_y: vec![signal],
    };
    let period = lo.period();
    let t0s: Vec<f64> = (0..s.t0_count).map(|i| period * i as f64 / s.t0_count as f64).collect();
    let means = t0s
        .par_iter()
        .map(|&t0| bhd_mean(&coherent, &lo.with_phase_time(t0), &model, &points))
        .collect::<Result<Vec<f64>, _>>()
        .map_err(compute)?;

    let cavity = FieldState::CasimirGround { period: s.period };
    let lambdas = [1.0, 2.0, 5.0, 10.0];
    let variances = lambdas
        .par_iter()
        .map(|&l| bhd_variance(&cavity, &lo.scaled(l), &model, &points).map(|o| o.variance_position_independent))
        .collect::<Result<Vec<f64>, _>>()
        .map_err(compute)?;
    let vacuum = bhd_variance(&FieldState::MinkowskiVacuum, &lo, &model, &points).map_err(compute)?;
    let db = variance_db_compare(&cavity, &FieldState::MinkowskiVacuum, &lo, &model, &points).map_err(compute)?;

    let text = |t: &str| Cell::Text(t.to_string());
    let mut rows: Vec<Vec<Cell>> = t0s
        .iter()
        .zip(&means)
        .map(|(&t0, &m)| vec![text("mean_vs_t0"), t0.into(), m.into()])
        .collect();
    rows.extend(
        lambdas
            .iter()
            .zip(&variances)
            .map(|(&l, &v)| vec![text("variance_casimir_vs_lambda"), l.into(), v.into()]),
    );
    rows.push(vec![text("variance_vacuum"), 1.0.into(), vacuum.variance_position_independent.into()]);
    rows.push(vec![text("db_casimir_vs_vacuum"), (s.omega_lo * s.period / PI).into(), db.into()]);
    Ok(Table {
        columns: vec!["series", "parameter", "value"],
        rows,
    })
}

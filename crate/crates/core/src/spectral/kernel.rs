/// Below this `|u|` the kernel is evaluated from its Taylor series.
pub const Q_TAYLOR_SWITCH: f64 = 0.5;

/// `Q(u) = sin u / u + cos u / u² - sin u / u³`.
///
/// Equivalently `Q(u) = (1/4) ∫_{-1}^{1} (1 + κ²) cos(uκ) dκ`, whose
/// expansion gives the series used near the origin.
pub fn q_kernel(u: f64) -> f64 {
    let u = u.abs();
    if u < Q_TAYLOR_SWITCH {
        q_taylor(u)
    } else {
        q_direct(u)
    }
}

/// Closed expression, exact in principle but cancelling badly as `u → 0`.
pub fn q_direct(u: f64) -> f64 {
    let (s, c) = u.sin_cos();
    s / u + c / (u * u) - s / (u * u * u)
}

/// Taylor series `Σ_m (-1)^m u^{2m} / (2m)! · (1/(2m+1) + 1/(2m+3)) / 2`,
/// truncated where the next term is below 1e-20 on the branch.
pub fn q_taylor(u: f64) -> f64 {
    let u2 = u * u;
    // Horner from the highest retained order down.
    const ORDERS: usize = 9;
    let mut acc = 0.0;
    for m in (0..ORDERS).rev() {
        let mf = m as f64;
        let coef = 0.5 * (1.0 / (2.0 * mf + 1.0) + 1.0 / (2.0 * mf + 3.0));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc * u2 + sign * coef / factorial(2 * m);
    }
    acc
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn origin() {
        assert_abs_diff_eq!(q_kernel(0.0), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn at_pi() {
        assert_abs_diff_eq!(q_kernel(PI), -1.0 / (PI * PI), epsilon = 1e-15);
    }

    #[test]
    fn at_half_pi() {
        let expected = 2.0 / PI - 8.0 / PI.powi(3);
        assert_abs_diff_eq!(q_kernel(PI / 2.0), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(q_kernel(PI / 2.0), 0.378_607, epsilon = 1e-6);
    }

    #[test]
    fn leading_taylor_terms() {
        let u: f64 = 1e-3;
        assert_abs_diff_eq!(q_kernel(u), 2.0 / 3.0 - 2.0 / 15.0 * u * u, epsilon = 1e-14);
    }

    #[test]
    fn branch_continuity() {
        let u = Q_TAYLOR_SWITCH;
        let (s, c) = u.sin_cos();
        let direct = s / u + c / (u * u) - s / (u * u * u);
        assert_abs_diff_eq!(q_taylor(u), direct, epsilon = 1e-14);
    }

    /// Independent route: quadrature of the (1 + κ²) cos(uκ) representation.
    #[test]
    fn matches_integral_representation() {
        use crate::numerics::integrate_adaptive;
        for u in [0.0, 0.2, 0.49, 0.51, 1.0, 3.7, 12.0, 40.0] {
            let rep = 0.25 * integrate_adaptive(|k| (1.0 + k * k) * (u * k).cos(), -1.0, 1.0, 1e-14).unwrap();
            assert_abs_diff_eq!(q_kernel(u), rep, epsilon = 1e-13);
        }
    }

    #[test]
    fn even() {
        for u in [0.1, 0.7, 5.0, 100.0] {
            assert_eq!(q_kernel(u), q_kernel(-u));
        }
    }
}

//! Symmetric summation of bilateral series `sum_{n in Z} a(n)`.
//!
//! Partial sums `P(N) = sum_{|n| <= N} a(n)` are smoothed by iterated box
//! averaging over the window `[N, 2N]`, which damps the oscillating
//! remainder of Fourier-type series. The smoothed estimates on a doubling
//! ladder of `N` are then Aitken-extrapolated whenever they approach their
//! limit geometrically, as monotone power-law tails do.

use super::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationReport {
    pub value: f64,
    /// Number of terms evaluated, counting both signs of `n`.
    pub terms_used: usize,
    /// Spread of the last accelerated estimates; always non-negative.
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilateralSummer {
    pub tol: f64,
    /// Largest `|n|` that may be evaluated.
    pub max_terms: usize,
    /// Number of box-averaging passes applied to the partial sums.
    pub smoothing_passes: usize,
    /// First `N` of the doubling ladder.
    pub start: usize,
}

impl BilateralSummer {
    pub fn new(tol: f64, max_terms: usize) -> Self {
        Self {
            tol,
            max_terms,
            smoothing_passes: 3,
            start: 4,
        }
    }

    pub fn sum<F: Fn(i64) -> f64>(&self, term: F) -> Result<SummationReport, NumericsError> {
        if !(self.tol > 0.0) {
            return Err(NumericsError::InvalidTolerance(self.tol));
        }
        let start = self.start.max(1);
        let passes = self.smoothing_passes.max(1);

        let mut partial = PartialSums::new(term(0));
        let mut smoothed: Vec<f64> = Vec::new();
        let mut accelerated: Vec<f64> = Vec::new();
        let mut n = start;
        let mut best = SummationReport {
            value: partial.last(),
            terms_used: 1,
            tail_estimate: f64::INFINITY,
        };

        while 2 * n <= self.max_terms {
            partial.extend_to(2 * n, &term);
            if !partial.last().is_finite() {
                return Err(NumericsError::NonFinite);
            }
            smoothed.push(window_average(partial.window(n, 2 * n), passes));
            accelerated.push(aitken_tail(&smoothed));

            let k = accelerated.len();
            let tail = match k {
                1 => f64::INFINITY,
                2 => f64::INFINITY,
                _ => (accelerated[k - 1] - accelerated[k - 2])
                    .abs()
                    .max((accelerated[k - 2] - accelerated[k - 3]).abs()),
            };
            best = SummationReport {
                value: accelerated[k - 1],
                terms_used: 2 * (2 * n) + 1,
                tail_estimate: tail,
            };
            if tail < self.tol {
                return Ok(best);
            }
            n *= 2;
        }

        Err(NumericsError::SeriesNotConverged {
            partial: best.value,
            tail_estimate: best.tail_estimate,
            terms_used: best.terms_used,
        })
    }
}

/// Sums `term(n)` over all integers with tolerance `tol`, evaluating at most
/// `|n| <= max_terms`.
pub fn sum_bilateral<F: Fn(i64) -> f64>(
    term: F,
    tol: f64,
    max_terms: usize,
) -> Result<SummationReport, NumericsError> {
    BilateralSummer::new(tol, max_terms).sum(term)
}

/// Running symmetric partial sums with Neumaier compensation.
struct PartialSums {
    sums: Vec<f64>,
    acc: f64,
    comp: f64,
}

impl PartialSums {
    fn new(a0: f64) -> Self {
        Self {
            sums: vec![a0],
            acc: a0,
            comp: 0.0,
        }
    }

    fn last(&self) -> f64 {
        self.acc + self.comp
    }

    fn add(&mut self, x: f64) {
        let t = self.acc + x;
        if self.acc.abs() >= x.abs() {
            self.comp += (self.acc - t) + x;
        } else {
            self.comp += (x - t) + self.acc;
        }
        self.acc = t;
    }

    fn extend_to<F: Fn(i64) -> f64>(&mut self, n_max: usize, term: &F) {
        while self.sums.len() <= n_max {
            let n = self.sums.len() as i64;
            self.add(term(n));
            self.add(term(-n));
            self.sums.push(self.last());
        }
    }

    fn window(&self, lo: usize, hi: usize) -> &[f64] {
        &self.sums[lo..=hi]
    }
}

/// Iterated moving averages over the window; the final pass averages
/// whatever remains. Works on offsets from the last partial sum so that
/// rounding scales with the remainder rather than with the sum.
fn window_average(window: &[f64], passes: usize) -> f64 {
    let base = window[window.len() - 1];
    let mut seq: Vec<f64> = window.iter().map(|v| v - base).collect();
    let width = (window.len() / passes).max(1);
    for _ in 1..passes {
        if seq.len() <= width {
            break;
        }
        let mut prefix = Vec::with_capacity(seq.len() + 1);
        prefix.push(0.0);
        let mut s = 0.0;
        for &v in &seq {
            s += v;
            prefix.push(s);
        }
        let len = seq.len() + 1 - width;
        seq = (0..len)
            .map(|i| (prefix[i + width] - prefix[i]) / width as f64)
            .collect();
    }
    base + seq.iter().sum::<f64>() / seq.len() as f64
}

/// Aitken delta-squared on the last three smoothed estimates, applied only
/// when their differences shrink geometrically with a consistent sign.
fn aitken_tail(smoothed: &[f64]) -> f64 {
    let k = smoothed.len();
    let last = smoothed[k - 1];
    if k < 3 {
        return last;
    }
    let d1 = smoothed[k - 2] - smoothed[k - 3];
    let d2 = last - smoothed[k - 2];
    // differences at rounding level carry no tail information
    let noise = 64.0 * f64::EPSILON * last.abs();
    if d1.abs() <= noise || d2.abs() <= noise {
        return last;
    }
    let ratio = d2 / d1;
    if ratio > 0.0 && ratio <= 0.75 {
        last + d2 * ratio / (1.0 - ratio)
    } else {
        last
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn basel() {
        let r = sum_bilateral(
            |n| if n >= 1 { 1.0 / (n as f64 * n as f64) } else { 0.0 },
            1e-8,
            1_000_000,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, PI * PI / 6.0, epsilon = 1e-8);
        assert!(r.tail_estimate < 1e-8);
        assert!(r.terms_used <= 2 * 1_000_000 + 1);
    }

    #[test]
    fn zero_series() {
        let r = sum_bilateral(|_| 0.0, 1e-12, 1000).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.tail_estimate, 0.0);
        assert!(r.terms_used >= 1 && r.terms_used < 100);
    }

    /// Abel summation oracle: the damped series sum_n r^n sin(n pi/2)/n
    /// is summed directly at two radii and Richardson-extrapolated to r = 1.
    #[test]
    fn sawtooth_against_abel_oracle() {
        let abel = |r: f64| -> f64 {
            (1..400_000)
                .map(|n| r.powi(n) * (n as f64 * PI / 2.0).sin() / n as f64)
                .sum()
        };
        let oracle = 2.0 * abel(1.0 - 5e-4) - abel(1.0 - 1e-3);
        assert_abs_diff_eq!(oracle, PI / 4.0, epsilon = 1e-6);

        let r = sum_bilateral(
            |n| if n >= 1 { (n as f64 * PI / 2.0).sin() / n as f64 } else { 0.0 },
            1e-6,
            1_000_000,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, oracle, epsilon = 1e-6);
    }

    #[test]
    fn slow_fourier_series() {
        // sum_{n>=1} sin(n theta)/n = (pi - theta)/2 on (0, 2 pi)
        for theta in [0.1, 0.7, 3.0, 6.1] {
            let r = sum_bilateral(
                |n| if n >= 1 { (n as f64 * theta).sin() / n as f64 } else { 0.0 },
                1e-7,
                1_000_000,
            )
            .unwrap();
            assert_abs_diff_eq!(r.value, (PI - theta) / 2.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn budget_exhaustion_carries_partial_result() {
        let err = sum_bilateral(|n| 1.0 / (1.0 + (n as f64).abs()), 1e-8, 64).unwrap_err();
        match err {
            NumericsError::SeriesNotConverged { partial, terms_used, .. } => {
                assert!(partial > 1.0);
                assert!(terms_used <= 2 * 64 + 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}

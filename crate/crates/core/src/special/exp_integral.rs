//! The incomplete gamma function Γ(0,x) and the trivial-zero tail sum.

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::special::require_x_above_one;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(0, x) = ∫ₓ^∞ e^(−t)/t dt for x > 0.
///
/// Uses the alternating series −γ − ln x − Σ (−x)ᵏ/(k·k!) for x ≤ 1 and the
/// even-contracted continued fraction with Lentz iteration above; both sides
/// of the split deliver close to machine relative precision.
///
/// # Examples
///
/// ```
/// let g = primecount::special::incomplete_gamma_zero(1.0).unwrap();
/// assert!((g - 0.21938393439552).abs() < 1e-12);
/// ```
pub fn incomplete_gamma_zero(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("incomplete gamma needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        let mut sum = 0.0;
        let mut term = 1.0; // x^k / k! at k = 0
        for k in 1..200 {
            term *= x / k as f64;
            let contrib = if k % 2 == 1 { term / k as f64 } else { -term / k as f64 };
            sum += contrib;
            if term / (k as f64) < 1e-18 * sum.abs().max(1.0) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() + sum)
    } else {
        // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
        // evaluated by modified Lentz; a_k = -k^2, b_k = x + 2k + 1.
        let tiny = 1e-300;
        let mut f = tiny;
        let mut c = f;
        let mut d = 0.0;
        let mut converged = false;
        for k in 0..400 {
            let (a, b) = if k == 0 {
                (1.0, x + 1.0)
            } else {
                (-((k * k) as f64), x + (2 * k + 1) as f64)
            };
            d = b + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!(
                "continued fraction for incomplete gamma stalled at x = {x}"
            )));
        }
        Ok((-x).exp() * f)
    }
}

/// Σ_{n=2}^∞ Γ(0, 2n·log x) for x > 1, the contribution of the trivial zeros.
///
/// Terms are summed until the next one falls below `abs_tol·(1 − x⁻²)` or the
/// index reaches `tail_terms`. The discarded tail obeys the geometric bound
/// Σ_{k>n} < Γ(0, 2n log x)·x⁻²/(1 − x⁻²); when truncation stops at the term
/// cap with that bound still above tolerance, the call fails rather than
/// returning a value it cannot certify.
pub fn trivial_zero_tail(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_x_above_one(x, cfg)?;
    let log_x = x.ln();
    let damping = 1.0 - x.powi(-2);
    let threshold = cfg.abs_tol * damping;

    let mut sum = 0.0;
    let mut last_term = f64::INFINITY;
    for n in 2..=cfg.tail_terms {
        let term = incomplete_gamma_zero(2.0 * n as f64 * log_x)?;
        sum += term;
        last_term = term;
        if term < threshold {
            return Ok(sum);
        }
    }
    let bound = last_term * x.powi(-2) / damping;
    if bound <= cfg.tolerance_for(sum.abs()) {
        Ok(sum)
    } else {
        Err(Error::Truncation { terms: cfg.tail_terms, bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive;

    #[test]
    fn gamma_zero_at_one_matches_quadrature_oracle() {
        // Oracle: adaptive quadrature of the defining integral on [1, 46].
        let cfg = QuadratureConfig { abs_tol: 1e-13, ..Default::default() };
        let oracle = adaptive(|t: f64| (-t).exp() / t, 1.0, 46.0, &cfg).unwrap().value;
        let got = incomplete_gamma_zero(1.0).unwrap();
        assert!((got - oracle).abs() < 1e-12, "got {got}, oracle {oracle}");
    }

    #[test]
    fn gamma_zero_series_cf_seam() {
        // The two algorithm branches must agree where they meet.
        let below = incomplete_gamma_zero(1.0 - 1e-12).unwrap();
        let above = incomplete_gamma_zero(1.0 + 1e-12).unwrap();
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn gamma_zero_bracketing() {
        // e^{-x}/(x+1) < Gamma(0,x) < e^{-x}/x
        for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0] {
            let g = incomplete_gamma_zero(x).unwrap();
            let e = (-x).exp();
            assert!(g > e / (x + 1.0), "lower bracket failed at {x}");
            assert!(g < e / x, "upper bracket failed at {x}");
        }
    }

    #[test]
    fn gamma_zero_strictly_decreasing() {
        let a = incomplete_gamma_zero(1.0).unwrap();
        let b = incomplete_gamma_zero(2.0).unwrap();
        assert!(b < a);
    }

    #[test]
    fn gamma_zero_rejects_nonpositive() {
        assert!(incomplete_gamma_zero(0.0).is_err());
        assert!(incomplete_gamma_zero(-1.0).is_err());
        assert!(incomplete_gamma_zero(f64::NAN).is_err());
    }

    #[test]
    fn tail_converges_quickly_at_ten() {
        let cfg = QuadratureConfig { abs_tol: 1e-12, ..Default::default() };
        // Direct summation oracle with a generous horizon.
        let log10 = 10.0_f64.ln();
        let mut oracle = 0.0;
        for n in 2..40 {
            oracle += incomplete_gamma_zero(2.0 * n as f64 * log10).unwrap();
        }
        let got = trivial_zero_tail(10.0, &cfg).unwrap();
        assert!((got - oracle).abs() < 1e-12);
    }

    #[test]
    fn tail_geometric_domination() {
        let cfg = QuadratureConfig::default();
        for &x in &[2.0, 5.0, 10.0, 100.0] {
            let tail = trivial_zero_tail(x, &cfg).unwrap();
            let dominating =
                incomplete_gamma_zero(4.0 * x.ln()).unwrap() / (1.0 - x.powi(-2));
            assert!(tail < dominating, "domination failed at {x}");
        }
    }

    #[test]
    fn tail_decreasing_in_x() {
        let cfg = QuadratureConfig::default();
        let t10 = trivial_zero_tail(10.0, &cfg).unwrap();
        let t100 = trivial_zero_tail(100.0, &cfg).unwrap();
        assert!(t100 < t10);
    }

    #[test]
    fn tail_cap_reports_truncation() {
        // x barely above 1 needs far more than 3 terms; the certified bound
        // must surface as an error, not silently degrade.
        let cfg = QuadratureConfig { tail_terms: 3, ..Default::default() };
        match trivial_zero_tail(1.001, &cfg) {
            Err(Error::Truncation { terms, bound }) => {
                assert_eq!(terms, 3);
                assert!(bound > 0.0);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn tail_domain_errors() {
        let cfg = QuadratureConfig::default();
        assert!(trivial_zero_tail(1.0, &cfg).is_err());
        assert!(trivial_zero_tail(0.5, &cfg).is_err());
    }
}

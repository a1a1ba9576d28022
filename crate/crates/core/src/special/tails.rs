//! Tail integrals: ∫ₓ^∞ dt/(t(t²−1)log t) and its term-wise decomposition.

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::adaptive;
use crate::special::require_x_above_one;

/// Terms beyond which the series route is considered unaffordable and the
/// direct route stands alone (only relevant for x very close to 1).
const SERIES_TERM_CAP: usize = 256;

/// ∫ₓ^∞ dt/(t(t²−1)·log t) for x > 1.
///
/// Evaluated directly after the substitution t = eᵘ, which turns the
/// integrand into 1/(u·(e^(2u)−1)) with clean exponential decay. Where the
/// series ∫ₓ^∞ t^(−2n−1)/log t dt (n ≥ 1) converges in a reasonable number
/// of terms the sum is evaluated as well and the two routes are required to
/// agree within `abs_tol`; a disagreement is reported as an error rather
/// than silently picking one answer.
pub fn riemann_tail_integral(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_x_above_one(x, cfg)?;
    let direct = direct_route(x, cfg)?;

    // Terms needed so that x^{-2n}/(2n log x) drops under tolerance.
    let log_x = x.ln();
    let needed = (-(cfg.abs_tol.min(1e-6)).ln() / (2.0 * log_x)).ceil() as usize + 2;
    if needed <= SERIES_TERM_CAP {
        let series = series_route(x, needed, cfg)?;
        let gap = (direct - series).abs();
        if gap > cfg.tolerance_for(direct.abs()) {
            return Err(Error::Inconsistent(format!(
                "tail integral routes disagree at x = {x}: direct {direct}, series {series}"
            )));
        }
    }
    Ok(direct)
}

fn direct_route(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let u0 = x.ln();
    let cutoff = u0 + 0.5 * (100.0 / cfg.abs_tol).ln() + 2.0;
    let mut piece = cfg.clone();
    piece.abs_tol = (cfg.abs_tol / 4.0).max(1e-15);
    let out = adaptive(|u: f64| 1.0 / (u * (2.0 * u).exp_m1()), u0, cutoff, &piece)?;
    Ok(out.value)
}

fn series_route(x: f64, terms: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let u0 = x.ln();
    let mut piece = cfg.clone();
    piece.abs_tol = (cfg.abs_tol / (4.0 * terms as f64)).max(1e-15);
    let mut sum = 0.0;
    for n in 1..=terms {
        let k = 2.0 * n as f64;
        let cutoff = u0 + ((4.0 / piece.abs_tol).ln() + 5.0) / k;
        let term = adaptive(|u: f64| (-k * u).exp() / u, u0, cutoff, &piece)?.value;
        sum += term;
        if term < piece.abs_tol {
            break;
        }
    }
    Ok(sum)
}

/// Evaluates both sides of the per-term identity
///
/// ∫ₓ^∞ t^(−2n−1)/log t dt = ∫ from 2n·log x to ∞ of e^(−t)/t dt
///
/// by independent adaptive quadratures (left side in the t domain, right
/// side in the exponential domain) and returns them as `(left, right)`.
pub fn term_integral_identity_check(
    x: f64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    require_x_above_one(x, cfg)?;
    if n == 0 {
        return Err(Error::Domain("term index n must be at least 1".into()));
    }
    let mut piece = cfg.clone();
    piece.abs_tol = (cfg.abs_tol / 4.0).max(1e-15);
    let k = 2.0 * n as f64;

    // Left: cutoff T with T^{-2n}/(2n log T) below tolerance.
    let t_hi = x * (((4.0 / piece.abs_tol).ln() + 2.0) / k).exp();
    let left = adaptive(|t: f64| t.powf(-k - 1.0) / t.ln(), x, t_hi, &piece)?.value;

    // Right: integrand e^{-t}/t from a = 2n log x, cutoff a + 45.
    let a = k * x.ln();
    let right = adaptive(|t: f64| (-t).exp() / t, a, a + 45.0, &piece)?.value;

    Ok((left, right))
}

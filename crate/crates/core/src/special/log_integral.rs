//! Real and complex logarithmic integrals.

use num_complex::Complex64;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::adaptive;
use crate::special::{pv_extrapolate, require_finite, require_x_above_one};

/// Li(x) = P.V. ∫₀ˣ dt/log t for x > 1.
///
/// The singularity at t = 1 is removed by a symmetric exclusion
/// (1 − ε, 1 + ε); the two remaining integrals are evaluated adaptively and
/// the exclusion width is extrapolated to zero. The limit exists because the
/// pole's odd part cancels across the exclusion.
///
/// # Examples
///
/// ```
/// let cfg = primecount::QuadratureConfig::default();
/// let li2 = primecount::special::li_real(2.0, &cfg).unwrap();
/// assert!((li2 - 1.0451637801).abs() < 1e-9);
/// ```
pub fn li_real(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_x_above_one(x, cfg)?;
    let tol = cfg.tolerance_for(1.0);
    let mut piece = cfg.clone();
    piece.abs_tol = (tol / 20.0).max(1e-15);
    piece.rel_tol = piece.rel_tol.min(piece.abs_tol);

    let integrand = |t: f64| {
        let l = t.ln();
        if l == 0.0 {
            0.0
        } else {
            1.0 / l
        }
    };
    pv_extrapolate(
        |eps| {
            let left = adaptive(integrand, 0.0, 1.0 - eps, &piece)?.value;
            let right = adaptive(integrand, 1.0 + eps, x, &piece)?.value;
            Ok(left + right)
        },
        0.1_f64.min(0.5 * (x - 1.0)).max(cfg.pv_epsilon_floor),
        cfg.pv_epsilon_floor,
        tol,
    )
}

/// Li(x^ρ) for complex ρ off the real axis, following the horizontal-path
/// definition: with u + iv = ρ·log x,
///
/// Li(x^ρ) = ∫ from −M+iv to u+iv of eˢ/s ds + sign(v)·πi,
///
/// where M is large enough that the discarded left tail is below `abs_tol`
/// (the tail is bounded by e^(−M)/|v|).
pub fn li_complex_power(x: f64, rho: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    require_x_above_one(x, cfg)?;
    require_finite("rho.re", rho.re)?;
    require_finite("rho.im", rho.im)?;
    if rho.im == 0.0 {
        return Err(Error::Domain(
            "rho on the real axis: the integration path would pass through the pole".into(),
        ));
    }
    let w = rho * x.ln();
    let (u, v) = (w.re, w.im);

    // e^{-M}/|v| < abs_tol, and the path must reach left of u regardless.
    let m = (-(cfg.abs_tol * v.abs()).ln()).max(-u + 5.0).max(1.0);
    let out = adaptive(
        |sigma| {
            let s = Complex64::new(sigma, v);
            s.exp() / s
        },
        -m,
        u,
        cfg,
    )?;
    let half_turn = Complex64::new(0.0, v.signum() * std::f64::consts::PI);
    Ok(out.value + half_turn)
}

//! The principal-value integral P.V. ∫₋₂¹ xˢ/s ds.

use crate::config::QuadratureConfig;
use crate::error::Result;
use crate::quadrature::adaptive;
use crate::special::{pv_extrapolate, require_x_above_one};

/// P.V. ∫₋₂¹ xˢ/s ds for x > 1.
///
/// The pole at s = 0 is excluded symmetrically on (−ε, ε); the odd part of
/// the singularity cancels, and the exclusion half-width is extrapolated to
/// zero. As x → 1⁺ the value tends to P.V. ∫₋₂¹ ds/s = −log 2.
pub fn pv_integral(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_x_above_one(x, cfg)?;
    let log_x = x.ln();
    let tol = cfg.tolerance_for(1.0);
    let mut piece = cfg.clone();
    piece.abs_tol = (tol / 20.0).max(1e-15);
    piece.rel_tol = piece.rel_tol.min(piece.abs_tol);

    let integrand = move |s: f64| (s * log_x).exp() / s;
    pv_extrapolate(
        |eps| {
            let left = adaptive(integrand, -2.0, -eps, &piece)?.value;
            let right = adaptive(integrand, eps, 1.0, &piece)?.value;
            Ok(left + right)
        },
        0.1,
        cfg.pv_epsilon_floor,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::li_real;

    #[test]
    fn matches_li_minus_correction() {
        // P.V. integral = Li(x) - int_0^{1/x^2} du/log u; the correction
        // integral is evaluated directly (log u < 0 on the whole range).
        let cfg = QuadratureConfig::default();
        for &x in &[5.0, 10.0, 100.0] {
            let pv = pv_integral(x, &cfg).unwrap();
            let li = li_real(x, &cfg).unwrap();
            let corr = adaptive(
                |u: f64| if u == 0.0 { 0.0 } else { 1.0 / u.ln() },
                0.0,
                x.powi(-2),
                &cfg,
            )
            .unwrap()
            .value;
            assert!(
                (pv - (li - corr)).abs() < 1e-8,
                "x = {x}: pv {pv}, li - corr {}",
                li - corr
            );
        }
    }

    #[test]
    fn near_one_tends_to_minus_log_two() {
        // At x = 1 the integrand degenerates to 1/s and the principal value
        // is exactly -log 2; just above 1 the value must be close.
        let cfg = QuadratureConfig::default();
        let pv = pv_integral(1.0 + 1e-9, &cfg).unwrap();
        assert!((pv + std::f64::consts::LN_2).abs() < 1e-7);
    }

    #[test]
    fn semicircle_indentation_oracle() {
        // Independent route: deform the excluded interval to a fixed upper
        // semicircle of radius r and subtract the analytically known half
        // residue pi i. The result is epsilon-free.
        use num_complex::Complex64;
        let cfg = QuadratureConfig::default();
        let x: f64 = 10.0;
        let log_x = x.ln();
        let r = 0.5;
        let f = |s: Complex64| (s * log_x).exp() / s;
        let line = |a: f64, b: f64| {
            adaptive(|s: f64| f(Complex64::new(s, 0.0)), a, b, &cfg).unwrap().value
        };
        // Arc from -r to r through +i r, traversed clockwise: s = r e^{i phi},
        // phi from pi down to 0, ds = i s dphi.
        let arc = adaptive(
            |phi: f64| {
                let s = Complex64::from_polar(r, phi);
                f(s) * Complex64::new(0.0, 1.0) * s
            },
            std::f64::consts::PI,
            0.0,
            &cfg,
        )
        .unwrap()
        .value;
        let contour = line(-2.0, -r) + arc + line(r, 1.0);
        let oracle = contour + Complex64::new(0.0, std::f64::consts::PI);
        assert!(oracle.im.abs() < 1e-9, "imaginary residue {oracle}");
        let pv = pv_integral(x, &cfg).unwrap();
        assert!((pv - oracle.re).abs() < 1e-9, "pv {pv} vs oracle {}", oracle.re);
    }

    #[test]
    fn halving_below_millis_is_stable() {
        // Contraction of the raw exclusion estimates once eps < 1e-3.
        let cfg = QuadratureConfig::default();
        let x: f64 = 5.0;
        let log_x = x.ln();
        let f = |s: f64| (s * log_x).exp() / s;
        let at = |eps: f64| {
            adaptive(f, -2.0, -eps, &cfg).unwrap().value
                + adaptive(f, eps, 1.0, &cfg).unwrap().value
        };
        // Raw estimates differ by ~2 eps log x; the extrapolated ladder from
        // successive halvings must differ by far less than abs_tol.
        let samples: Vec<f64> = (0..6).map(|k| at(8e-3 / (1 << k) as f64)).collect();
        let (a, _) = crate::quadrature::richardson(&samples[..5], &[1, 3, 5, 7]);
        let (b, _) = crate::quadrature::richardson(&samples[1..], &[1, 3, 5, 7]);
        assert!((a - b).abs() < cfg.abs_tol);
    }

    #[test]
    fn rejects_x_at_or_below_one() {
        let cfg = QuadratureConfig::default();
        assert!(pv_integral(1.0, &cfg).is_err());
        assert!(pv_integral(0.2, &cfg).is_err());
    }
}

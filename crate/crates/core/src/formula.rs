//! Assembling the weighted prime-power count f(x) from its analytic parts,
//! in two classically equivalent forms, plus the prime count itself via
//! Möbius inversion.
//!
//! Both forms share the sum over non-trivial zeros and the -log 2 constant;
//! they differ in the leading term (Li(x) versus a principal-value power
//! integral) and in the tail (an integral past x versus a sum of incomplete
//! gamma values from the trivial zeros). That the two totals agree to
//! quadrature accuracy is the central cross-check of the whole crate, and
//! `verify_identity` tests the underlying term identity directly.

use serde::{Deserialize, Serialize};

use crate::arithmetic::big_f_from_small_f;
use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::adaptive;
use crate::special::{
    incomplete_gamma_zero, li_complex_power, li_real, pv_integral, riemann_tail_integral,
    trivial_zero_tail,
};
use crate::zeros::ZeroList;
use crate::Complex;

/// Conjugate zero pairs must cancel the imaginary parts to this level.
const IM_RESIDUE_TOL: f64 = 1e-8;
/// Envelope coefficient for the truncation estimate, frozen from an
/// empirical sweep against the sieve oracle (x to 500, 5 to 100 zeros):
/// the worst observed error stayed below 6.4 times the bare scale.
const TRUNCATION_COEFF: f64 = 8.0;
/// Truncation scale when no zeros are used at all: the first zero ordinate.
const FIRST_ZERO_SCALE: f64 = 14.134_725_141_734_694;

/// Which closed form of f(x) to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// Li(x) leading term with the integral tail past x.
    Riemann,
    /// Principal-value power integral with the trivial-zero gamma tail.
    Residue,
}

/// One formula evaluation, bundled for dispatch by [`evaluate`].
#[derive(Clone, Copy, Debug)]
pub struct EvalRequest<'a> {
    /// Evaluation point, must exceed 1.
    pub x: f64,
    /// Zero ordinates for the oscillatory sum.
    pub zeros: &'a ZeroList,
    /// Quadrature tolerances for every integral involved.
    pub cfg: &'a QuadratureConfig,
    /// Which closed form to assemble.
    pub form: Form,
}

/// Term-by-term breakdown of one explicit-formula evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaBreakdown {
    /// Leading term: Li(x), or the principal-value integral.
    pub leading: f64,
    /// Minus the sum over zeros of Li(x^ρ) + Li(x^{1-ρ}), real part.
    pub zero_sum: f64,
    /// Imaginary part left over after conjugate pairing, kept for audit.
    pub zero_sum_im_residue: f64,
    /// Tail term: the integral past x, or the trivial-zero gamma sum.
    pub tail: f64,
    /// The constant term, -log 2.
    pub constant: f64,
    /// leading + zero_sum + tail + constant.
    pub total: f64,
    /// How many zero ordinates entered the sum.
    pub zeros_used: usize,
    /// Envelope estimate of the error from truncating the zero sum.
    pub est_truncation_error: f64,
}

/// Envelope for the neglected zero-sum tail beyond the last ordinate used:
/// each term oscillates with amplitude about 2√x/(γ log x), and summing
/// through the zero density log γ leaves this scale.
fn truncation_envelope(x: f64, last_ordinate: Option<f64>) -> f64 {
    let g = last_ordinate.unwrap_or(FIRST_ZERO_SCALE);
    TRUNCATION_COEFF * x.sqrt() * g.ln() / (g * x.ln())
}

/// -Σ [Li(x^ρ) + Li(x^{1-ρ})] over ρ = 1/2 + iγ, summed in increasing γ
/// order (the ordering is part of the contract; the sum is conditionally
/// convergent in spirit). Both members of each conjugate pair are evaluated
/// independently so the recorded imaginary residue is a real check.
fn zero_sum(x: f64, zeros: &ZeroList, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let mut acc = Complex::new(0.0, 0.0);
    for &gamma in zeros.ordinates() {
        acc += li_complex_power(x, Complex::new(0.5, gamma), cfg)?;
        acc += li_complex_power(x, Complex::new(0.5, -gamma), cfg)?;
    }
    let residue = -acc.im;
    if residue.abs() >= IM_RESIDUE_TOL {
        return Err(Error::Inconsistent(format!(
            "zero sum at x = {x} keeps imaginary residue {residue:.3e} after conjugate pairing"
        )));
    }
    Ok((-acc.re, residue))
}

fn assemble(
    x: f64,
    leading: f64,
    tail: f64,
    zeros: &ZeroList,
    cfg: &QuadratureConfig,
) -> Result<FormulaBreakdown> {
    let (zero_sum, zero_sum_im_residue) = zero_sum(x, zeros, cfg)?;
    let constant = -std::f64::consts::LN_2;
    Ok(FormulaBreakdown {
        leading,
        zero_sum,
        zero_sum_im_residue,
        tail,
        constant,
        total: leading + zero_sum + tail + constant,
        zeros_used: zeros.len(),
        est_truncation_error: truncation_envelope(x, zeros.ordinates().last().copied()),
    })
}

fn require_x_above_one(x: f64) -> Result<()> {
    if x.is_finite() && x > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("formula evaluation needs x > 1, got {x}")))
    }
}

/// f(x) = Li(x) - Σ [Li(x^ρ) + Li(x^{1-ρ})] + ∫ₓ^∞ dt/(t(t²-1) log t) - log 2.
///
/// # Errors
///
/// `Domain` for x ≤ 1; `Inconsistent` when conjugate pairing fails to
/// cancel the imaginary parts; quadrature errors pass through.
pub fn f_riemann(x: f64, zeros: &ZeroList, cfg: &QuadratureConfig) -> Result<FormulaBreakdown> {
    require_x_above_one(x)?;
    let leading = li_real(x, cfg)?;
    let tail = riemann_tail_integral(x, cfg)?;
    assemble(x, leading, tail, zeros, cfg)
}

/// f(x) = P.V.∫₋₂¹ xˢ/s ds - Σ [Li(x^ρ) + Li(x^{1-ρ})]
///        + Σ_{n≥2} Γ(0, 2n log x) - log 2.
///
/// # Errors
///
/// As for [`f_riemann`].
pub fn f_residue(x: f64, zeros: &ZeroList, cfg: &QuadratureConfig) -> Result<FormulaBreakdown> {
    require_x_above_one(x)?;
    let leading = pv_integral(x, cfg)?;
    let tail = trivial_zero_tail(x, cfg)?;
    assemble(x, leading, tail, zeros, cfg)
}

/// Evaluate the form named in the request.
///
/// # Errors
///
/// As for [`f_riemann`] and [`f_residue`].
pub fn evaluate(req: &EvalRequest<'_>) -> Result<FormulaBreakdown> {
    match req.form {
        Form::Riemann => f_riemann(req.x, req.zeros, req.cfg),
        Form::Residue => f_residue(req.x, req.zeros, req.cfg),
    }
}

/// Riemann's prime-counting approximation F(x): Möbius inversion over
/// analytic f evaluations at x^{1/n}. Arguments at or below 2 contribute
/// nothing (f vanishes below its first jump).
///
/// # Errors
///
/// `Domain` for x ≤ 2; evaluation errors pass through.
pub fn big_f_analytic(x: f64, zeros: &ZeroList, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x > 2.0) {
        return Err(Error::Domain(format!("prime count evaluation needs x > 2, got {x}")));
    }
    big_f_from_small_f(x, |y| {
        if y <= 2.0 {
            Ok(0.0)
        } else {
            Ok(f_riemann(y, zeros, cfg)?.total)
        }
    })
}

/// Both sides of the tail identity and its change-of-variables chain,
/// each evaluated by an independent quadrature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// Evaluation point.
    pub x: f64,
    /// Li(x) + ∫ₓ^∞ dt/(t(t²-1) log t).
    pub riemann_side: f64,
    /// P.V.∫₋₂¹ xˢ/s ds + Σ_{n≥2} Γ(0, 2n log x).
    pub residue_side: f64,
    /// riemann_side - residue_side.
    pub difference: f64,
    /// ∫_{2 log x}^∞ e^{-t}/t dt.
    pub chain_left: f64,
    /// -∫₀^{x⁻²} du/log u.
    pub chain_right: f64,
    /// chain_left - chain_right.
    pub chain_difference: f64,
}

/// Evaluate the identity Li(x) + ∫ₓ^∞ dt/(t(t²-1) log t) =
/// P.V.∫₋₂¹ xˢ/s ds + Σ_{n≥2} Γ(0, 2n log x), all four pieces computed
/// independently, along with the substitution chain
/// ∫_{2 log x}^∞ e^{-t}/t dt = -∫₀^{x⁻²} du/log u that connects the two
/// tail representations.
///
/// # Errors
///
/// `Domain` for x ≤ 1; quadrature errors pass through.
pub fn verify_identity(x: f64, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    require_x_above_one(x)?;
    let riemann_side = li_real(x, cfg)? + riemann_tail_integral(x, cfg)?;
    let residue_side = pv_integral(x, cfg)? + trivial_zero_tail(x, cfg)?;
    let chain_left = incomplete_gamma_zero(2.0 * x.ln())?;
    let chain_right = -adaptive(|u: f64| 1.0 / u.ln(), 0.0, x.powi(-2), cfg)?.value;
    Ok(IdentityReport {
        x,
        riemann_side,
        residue_side,
        difference: riemann_side - residue_side,
        chain_left,
        chain_right,
        chain_difference: chain_left - chain_right,
    })
}

//! Scalar special functions: logarithmic integrals, the incomplete gamma
//! function Γ(0,·), principal-value integrals, and the tail integrals that
//! appear alongside them in the explicit formula.
//!
//! Principal values are always realized the same way: integrate with a
//! symmetric exclusion of half-width ε around the singularity, then
//! extrapolate ε → 0 through a Richardson ladder. Symmetry cancels the even
//! orders of the expansion, so a handful of halvings reaches full precision.

mod exp_integral;
mod log_integral;
mod principal_value;
mod tails;

pub use exp_integral::{incomplete_gamma_zero, trivial_zero_tail};
pub use log_integral::{li_complex_power, li_real};
pub use principal_value::pv_integral;
pub use tails::{riemann_tail_integral, term_integral_identity_check};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::richardson;

/// Exponents present in a symmetric-exclusion error expansion. The even
/// orders cancel, leaving the linear term and the odd tail.
const PV_POWERS: [usize; 5] = [1, 3, 5, 7, 9];

/// Drives a principal-value evaluation: `eval(eps)` integrates with the
/// symmetric exclusion in place, and the ladder extrapolates the exclusion
/// width to zero, halving from `eps0` down to at most `floor`.
pub(crate) fn pv_extrapolate(
    mut eval: impl FnMut(f64) -> Result<f64>,
    eps0: f64,
    floor: f64,
    tol: f64,
) -> Result<f64> {
    let mut samples = Vec::with_capacity(8);
    let mut eps = eps0;
    let mut last: Option<(f64, f64)> = None;
    while eps >= floor {
        samples.push(eval(eps)?);
        if samples.len() >= 3 {
            let (value, err) = richardson(&samples, &PV_POWERS);
            if err < 0.5 * tol {
                return Ok(value);
            }
            last = Some((value, err));
        }
        eps *= 0.5;
    }
    match last {
        Some((value, err)) if err < 10.0 * tol => Ok(value),
        Some((_, err)) => Err(Error::Convergence(format!(
            "principal value ladder reached exclusion floor {floor:.1e} with residual {err:.3e} \
             (target {tol:.1e})"
        ))),
        None => Err(Error::Convergence(
            "principal value ladder has too few levels between eps0 and the floor".into(),
        )),
    }
}

/// Rejects non-finite inputs before they reach any numerical routine.
pub(crate) fn require_finite(label: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{label} must be finite, got {value}")))
    }
}

/// Validates the shared preconditions `x > 1` plus a usable config.
pub(crate) fn require_x_above_one(x: f64, cfg: &QuadratureConfig) -> Result<()> {
    cfg.validate()?;
    require_finite("x", x)?;
    if x <= 1.0 {
        return Err(Error::Domain(format!("x must exceed 1, got {x}")));
    }
    Ok(())
}

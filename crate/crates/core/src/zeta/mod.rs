//! The zeta engine: pointwise values, the logarithmic derivative, branch
//! tracking of log zeta along paths, and the contour measurements built on
//! top of it.
//!
//! Everything here is validated on a single rectangular region,
//! [`ACCURACY_BOX`]. Public entry points reject evaluation outside it rather
//! than degrade quietly.

pub(crate) mod gamma;

mod continuation;
mod eval;
mod geometry;

pub use continuation::{continue_log_zeta, BranchTrace, PathPolyline};
pub use eval::{zeta, zeta_log_deriv};
pub use geometry::{
    argument_principle_count, measure_critical_cut_jump, measure_cut_jump, measure_upper_limit,
    rogue_experiment,
};

use crate::error::{Error, Result};
use crate::Complex;

/// Rectangle of the complex plane on which evaluation accuracy is validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBox {
    /// Leftmost validated real part.
    pub re_min: f64,
    /// Rightmost validated real part.
    pub re_max: f64,
    /// Largest validated |imaginary part|.
    pub im_max: f64,
}

impl AccuracyBox {
    /// Whether `s` lies inside the validated region. Non-finite points never do.
    pub fn contains(&self, s: Complex) -> bool {
        s.re.is_finite()
            && s.im.is_finite()
            && s.re >= self.re_min
            && s.re <= self.re_max
            && s.im.abs() <= self.im_max
    }
}

/// The validated region: re in [-12, 12], |im| up to 250. Wide enough to
/// enclose every contour the crate draws (the hundredth zero ordinate is
/// near 236.5) with margin for anchor segments.
pub const ACCURACY_BOX: AccuracyBox = AccuracyBox { re_min: -12.0, re_max: 12.0, im_max: 250.0 };

/// Paths must keep this distance from the pole and from every known zero;
/// offset ladders for cut measurements start at or above it.
pub const EXCLUSION_RADIUS: f64 = 1e-3;

pub(crate) fn ensure_in_box(operation: &str, s: Complex) -> Result<()> {
    if ACCURACY_BOX.contains(s) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{operation}: {s} lies outside the validated region \
             (re in [{}, {}], |im| <= {})",
            ACCURACY_BOX.re_min, ACCURACY_BOX.re_max, ACCURACY_BOX.im_max
        )))
    }
}

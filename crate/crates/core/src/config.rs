//! Shared numerical configuration.

use crate::error::{Error, Result};

/// Tolerances and budgets for every quadrature-backed routine in the crate.
///
/// A single config value is threaded through the special functions, the
/// branch continuation, and the explicit-formula evaluators so that one knob
/// controls the accuracy of a whole computation.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance for adaptive integration and series truncation.
    pub abs_tol: f64,
    /// Relative tolerance; the effective target is
    /// `max(abs_tol, rel_tol * |estimate|)`.
    pub rel_tol: f64,
    /// Hard cap on interval bisections per adaptive integral.
    pub max_subdivisions: usize,
    /// Smallest symmetric exclusion half-width used around a principal value
    /// singularity before extrapolating the exclusion to zero.
    pub pv_epsilon_floor: f64,
    /// Term cap for the trivial-zero tail sum.
    pub tail_terms: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            pv_epsilon_floor: 1e-6,
            tail_terms: 64,
        }
    }
}

impl QuadratureConfig {
    /// Checks the invariants every routine relies on.
    ///
    /// Tolerances must lie in `(0, 1)`, the subdivision budget must allow at
    /// least 8 bisections, the exclusion floor must be positive and small,
    /// and the term cap must be positive.
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol < 1.0) {
            return Err(Error::Config(format!("abs_tol = {} not in (0, 1)", self.abs_tol)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Config(format!("rel_tol = {} not in (0, 1)", self.rel_tol)));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::Config(format!(
                "max_subdivisions = {} below minimum of 8",
                self.max_subdivisions
            )));
        }
        if !(self.pv_epsilon_floor > 0.0 && self.pv_epsilon_floor <= 0.1) {
            return Err(Error::Config(format!(
                "pv_epsilon_floor = {} not in (0, 0.1]",
                self.pv_epsilon_floor
            )));
        }
        if self.tail_terms == 0 {
            return Err(Error::Config("tail_terms must be positive".into()));
        }
        Ok(())
    }

    /// Effective tolerance for a quantity of magnitude `scale`.
    pub(crate) fn tolerance_for(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale)
    }
}

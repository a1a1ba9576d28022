//! Error types shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong during an evaluation.
///
/// Numerical routines here fail loudly rather than silently returning junk:
/// an argument outside a routine's domain, a quadrature that will not
/// contract, or a certification mismatch all surface as distinct variants.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme failed to contract to the requested tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Evaluation requested exactly at (or too close to) a pole or zero.
    #[error("evaluation at singular point: {0}")]
    Singular(String),

    /// A continuation path passes too close to a singular point of log zeta.
    #[error("path rejected: {0}")]
    PathRejected(String),

    /// The supplied anchor value does not reproduce the function value.
    #[error("anchor mismatch: {0}")]
    AnchorMismatch(String),

    /// Adaptive step fell below the hard floor while tracking the branch.
    #[error("step collapse at s = {at}: step {step:.3e} below floor")]
    StepCollapse {
        /// Point on the path where refinement gave up.
        at: num_complex::Complex64,
        /// Final rejected step length.
        step: f64,
    },

    /// Two redundant measurements of the same quantity disagree.
    #[error("inconsistent measurements: {0}")]
    Inconsistent(String),

    /// Zero list failed certification against the argument principle.
    #[error("certification failed: counted {counted} zeros up to t = {t_max}, winding gives {winding}")]
    Certification {
        /// Zeros located by the scan.
        counted: usize,
        /// Count from the argument-principle winding number.
        winding: i64,
        /// Height the certification ran to.
        t_max: f64,
    },

    /// A zero file could not be parsed.
    #[error("parse error at line {line}: {reason}")]
    Parse {
        /// One-based line number in the input file.
        line: usize,
        /// What was wrong with the line.
        reason: String,
    },

    /// Loaded data failed validation (ordering, spot checks).
    #[error("validation failed: {0}")]
    Validation(String),

    /// A truncated sum stopped at its term cap with a certified tail bound
    /// still above the requested tolerance.
    #[error("series truncated after {terms} terms with tail bound {bound:.3e} above tolerance")]
    Truncation {
        /// Terms actually summed.
        terms: usize,
        /// Rigorous bound on the discarded tail.
        bound: f64,
    },

    /// Configuration rejected by validation.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Underlying I/O failure (zero files, trace export).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

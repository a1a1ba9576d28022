//! Analytic prime counting built on a branch-tracked complex logarithm of the
//! Riemann zeta function.
//!
//! The crate evaluates the prime counting function two ways and insists that
//! they agree:
//!
//! * **Exactly**, by sieving: [`arithmetic::big_f_step`] and
//!   [`arithmetic::small_f_step`] are rational-valued step functions counting
//!   primes and prime powers, with the half-jump convention at the jumps.
//! * **Analytically**, by summing over zeta zeros: [`formula::f_riemann`] and
//!   [`formula::f_residue`] evaluate two classically equivalent closed forms
//!   of the weighted prime power count, and [`formula::big_f_analytic`]
//!   recovers the prime count itself through Mobius inversion.
//!
//! Everything in between exists to make those two meet: careful principal
//! value integrals and exponential-integral machinery ([`special`]), a zeta
//! evaluator with an analytically continued logarithm whose branch is tracked
//! along explicit paths ([`zeta`]), and a Hardy Z-function zero finder whose
//! output is certified against an argument-principle count ([`zeros`]).
//!
//! # Example
//!
//! ```
//! use num_traits::ToPrimitive;
//! use primecount::config::QuadratureConfig;
//! use primecount::{arithmetic, formula, zeros};
//!
//! let cfg = QuadratureConfig::default();
//! let zs = zeros::find_zeros_up_to(30.0, &cfg).unwrap();
//! let breakdown = formula::f_riemann(10.0, &zs, &cfg).unwrap();
//! // The exact value is 16/3: four primes, plus 1/2 for 4 and 9,
//! // plus 1/3 for 8. Three zeros already land within a tenth.
//! let table = arithmetic::sieve(11).unwrap();
//! let exact = arithmetic::small_f_step(10.0, &table).unwrap().to_f64().unwrap();
//! assert!((breakdown.total - exact).abs() < 0.1);
//! ```
//!
//! Evaluations are validated for arguments in the strip `|Im s| <= 250`,
//! `-12 <= Re s <= 12`; see [`zeta::ACCURACY_BOX`].

#![forbid(unsafe_code)]
#![warn(missing_docs)]
// Domain guards are written `!(x > a)` so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Node tables and frozen reference values keep their source precision.
#![allow(clippy::excessive_precision)]

pub mod arithmetic;
pub mod config;
pub mod error;
pub mod formula;
pub mod quadrature;
pub mod special;
pub mod zeros;
pub mod zeta;

pub use config::QuadratureConfig;
pub use error::{Error, Result};

/// Complex double-precision scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

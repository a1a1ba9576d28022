//! Locating non-trivial zeros on the critical line, and validating zero
//! tables from outside sources.
//!
//! Zeros are found as sign changes of the Hardy Z function on a fixed grid,
//! refined by bisection, and the resulting count is certified against an
//! argument-principle winding count over the enclosing rectangle. A list
//! that fails certification is never returned.

use std::io::{BufRead, BufReader, Read};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::zeta::gamma::ln_gamma;
use crate::zeta::{argument_principle_count, zeta, ACCURACY_BOX};
use crate::Complex;

/// Scan grid step, well below the smallest zero gap in the validated strip.
const GRID_STEP: f64 = 0.05;
/// Bisection stops once the bracket is this narrow.
const BISECT_TOL: f64 = 1e-10;
const BISECT_MAX_ITERS: usize = 60;
/// The rotated zeta value must be this close to real for Z to make sense.
const Z_RESIDUE_TOL: f64 = 1e-9;
/// A refined ordinate must bring |zeta| at least this low.
const REFINED_ZETA_TOL: f64 = 1e-8;
/// Spot-check budget and tolerance for loaded tables.
const LOAD_SAMPLE: usize = 10;
const LOAD_SPOT_TOL: f64 = 1e-6;
/// The winding rectangle's bottom edge (matches the counting contour).
const COUNT_FLOOR: f64 = 0.5;
/// Theorem 6 slack: |count - main terms| <= this times log T.
const COUNT_BAND_SLACK: f64 = 2.0;

/// Where a zero list came from, which determines how far it is trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSource {
    /// Found by scan and bisection here, count-certified.
    Computed,
    /// Parsed from an external table, spot-validated only.
    Loaded,
}

/// Ascending positive ordinates of non-trivial zeros.
#[derive(Clone, Debug)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: ZeroSource,
    certified_through: f64,
}

impl ZeroList {
    /// Wrap a list of ordinates that came from neither the finder nor a
    /// table file. No count certification is claimed.
    ///
    /// # Errors
    ///
    /// `Validation` unless the ordinates are positive, finite, and
    /// strictly increasing.
    pub fn from_ordinates(ordinates: Vec<f64>, source: ZeroSource) -> Result<Self> {
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Validation(format!("ordinate {g} must be positive")));
            }
            if i > 0 && g <= ordinates[i - 1] {
                return Err(Error::Validation(format!(
                    "ordinates must increase strictly: {g} after {}",
                    ordinates[i - 1]
                )));
            }
        }
        Ok(ZeroList { ordinates, source, certified_through: 0.0 })
    }

    /// The ordinates, ascending.
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// Where the list came from.
    pub fn source(&self) -> ZeroSource {
        self.source
    }

    /// Height below which the list provably misses no zero (0 when the
    /// list was never count-certified).
    pub fn certified_through(&self) -> f64 {
        self.certified_through
    }

    /// Height up to which counting against this list is meaningful: the
    /// certified height, or for uncertified lists the last ordinate.
    pub fn coverage(&self) -> f64 {
        self.certified_through.max(self.ordinates.last().copied().unwrap_or(0.0))
    }

    /// Number of zeros in the list.
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    /// Whether the list holds no zeros.
    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of ordinates at or below `t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// The first `n` zeros (all of them when `n` exceeds the length), for
    /// truncation studies. Certification shrinks to the kept range.
    pub fn truncated(&self, n: usize) -> ZeroList {
        let ordinates: Vec<f64> = self.ordinates.iter().copied().take(n).collect();
        let kept = ordinates.last().copied().unwrap_or(0.0);
        ZeroList {
            ordinates,
            source: self.source,
            certified_through: self.certified_through.min(kept),
        }
    }
}

/// Phase θ(t) with e^{iθ(t)} ζ(1/2 + it) real: Im log Γ(1/4 + it/2)
/// minus (t/2) log π, evaluated through the gamma machinery rather than
/// its asymptotic expansion so small t needs no special casing.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("theta argument {t} must be finite")));
    }
    let lg = ln_gamma(Complex::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * std::f64::consts::PI.ln())
}

/// Hardy's real-valued Z(t) = e^{iθ(t)} ζ(1/2 + it). Its sign changes are
/// exactly the critical-line zeros.
///
/// # Errors
///
/// `Domain` outside 0 < t ≤ 250; `Inconsistent` when the rotated value
/// keeps an imaginary residue at or above 1e-9, which would mean the phase
/// or the zeta value is off.
pub fn hardy_z(t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= ACCURACY_BOX.im_max) {
        return Err(Error::Domain(format!(
            "Z(t) is validated for 0 < t <= {}, got {t}",
            ACCURACY_BOX.im_max
        )));
    }
    let theta = riemann_siegel_theta(t)?;
    let rotated = Complex::new(0.0, theta).exp() * zeta(Complex::new(0.5, t))?;
    if rotated.im.abs() >= Z_RESIDUE_TOL {
        return Err(Error::Inconsistent(format!(
            "rotated zeta at t = {t} has imaginary residue {:.3e}",
            rotated.im
        )));
    }
    Ok(rotated.re)
}

fn bisect(mut lo: f64, mut hi: f64, mut z_lo: f64) -> Result<f64> {
    for _ in 0..BISECT_MAX_ITERS {
        if hi - lo <= BISECT_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let z_mid = hardy_z(mid)?;
        if z_mid == 0.0 {
            return Ok(mid);
        }
        if (z_mid < 0.0) == (z_lo < 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "bisection failed to contract [{lo}, {hi}] below {BISECT_TOL}"
    )))
}

/// Find every critical-line zero with ordinate in (0, `t_max`] by scanning
/// Z for sign changes on a 0.05 grid and bisecting each bracket, then
/// certify the count against the argument-principle winding number. Only
/// a certified list is returned.
///
/// # Errors
///
/// `Domain` for a height outside (0, 250]; `Certification` when the scan
/// and the winding count disagree (a tangential or near-tangential zero
/// the grid cannot see); `Inconsistent` when a refined ordinate fails the
/// |zeta| < 1e-8 re-check; evaluation errors pass through.
pub fn find_zeros_up_to(t_max: f64, cfg: &QuadratureConfig) -> Result<ZeroList> {
    if !(t_max > 0.0 && t_max <= ACCURACY_BOX.im_max) {
        return Err(Error::Domain(format!(
            "zero search is validated for 0 < t <= {}, got {t_max}",
            ACCURACY_BOX.im_max
        )));
    }
    cfg.validate()?;

    let mut ordinates = Vec::new();
    let mut prev_t = GRID_STEP.min(t_max);
    let mut prev_z = hardy_z(prev_t)?;
    let mut k = 2usize;
    while prev_t < t_max {
        let t = (k as f64 * GRID_STEP).min(t_max);
        let z = hardy_z(t)?;
        if z == 0.0 {
            ordinates.push(t);
        } else if prev_z != 0.0 && (z < 0.0) != (prev_z < 0.0) {
            let gamma = bisect(prev_t, t, prev_z)?;
            let residual = zeta(Complex::new(0.5, gamma))?.norm();
            if residual >= REFINED_ZETA_TOL {
                return Err(Error::Inconsistent(format!(
                    "refined ordinate {gamma} leaves |zeta| = {residual:.3e}"
                )));
            }
            ordinates.push(gamma);
        }
        prev_t = t;
        prev_z = z;
        k += 1;
    }

    // The counting rectangle's bottom edge sits at 1/2, so the scan over
    // (0, 1/2) is certified vacuously; a zero there would surface as a
    // count mismatch.
    let winding = if t_max > COUNT_FLOOR + crate::zeta::EXCLUSION_RADIUS {
        argument_principle_count(t_max, cfg)?
    } else {
        0
    };
    if winding < 0 || ordinates.len() != winding as usize {
        return Err(Error::Certification { counted: ordinates.len(), winding, t_max });
    }
    Ok(ZeroList { ordinates, source: ZeroSource::Computed, certified_through: t_max })
}

/// Parse a zero table: UTF-8 text, one positive decimal ordinate per line,
/// strictly ascending, lines starting with '#' ignored. A 10-element
/// deterministic sample is spot-checked with |zeta(1/2 + iγ)| < 1e-6, so
/// every ordinate must stay within the validated strip height.
///
/// # Errors
///
/// `Parse` with the one-based line number for unreadable lines,
/// `Validation` for ordering violations or a failed spot check, `Io` for
/// stream failures.
pub fn load_zeros(source: impl Read) -> Result<ZeroList> {
    let mut ordinates: Vec<f64> = Vec::new();
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let value: f64 = text.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            reason: format!("{e}: {text:?}"),
        })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("ordinate {value} must be positive"),
            });
        }
        if let Some(&last) = ordinates.last() {
            if value <= last {
                return Err(Error::Validation(format!(
                    "line {}: ordinate {value} does not increase over {last}",
                    idx + 1
                )));
            }
        }
        ordinates.push(value);
    }

    // Small tables are checked in full; larger ones on a fixed-seed
    // congruential sample so validation stays reproducible.
    let sample: Vec<f64> = if ordinates.len() <= LOAD_SAMPLE {
        ordinates.clone()
    } else {
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ ordinates.len() as u64;
        (0..LOAD_SAMPLE)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ordinates[(state >> 33) as usize % ordinates.len()]
            })
            .collect()
    };
    for gamma in sample {
        let residual = zeta(Complex::new(0.5, gamma))?.norm();
        if residual >= LOAD_SPOT_TOL {
            return Err(Error::Validation(format!(
                "ordinate {gamma} is not a zero: |zeta(1/2 + it)| = {residual:.3e}"
            )));
        }
    }
    Ok(ZeroList { ordinates, source: ZeroSource::Loaded, certified_through: 0.0 })
}

/// Count ordinates at or below `t` and compare with the main terms of the
/// zero-counting asymptotic, (t/2π) log(t/2π) − t/2π. Returns the pair
/// (count, estimate) after checking the band |count − estimate| ≤ 2 log t.
///
/// # Errors
///
/// `Domain` when `t` is at most 1 or beyond the list's coverage;
/// `Inconsistent` when the band fails, which at desk scale means the list
/// is missing zeros.
pub fn zero_count_check(t: f64, zeros: &ZeroList) -> Result<(usize, f64)> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("count check needs t > 1, got {t}")));
    }
    if t > zeros.coverage() {
        return Err(Error::Domain(format!(
            "count check at t = {t} exceeds the list's coverage {}",
            zeros.coverage()
        )));
    }
    let count = zeros.count_below(t);
    let scaled = t / (2.0 * std::f64::consts::PI);
    let estimate = scaled * scaled.ln() - scaled;
    if (count as f64 - estimate).abs() > COUNT_BAND_SLACK * t.ln() {
        return Err(Error::Inconsistent(format!(
            "count {count} at t = {t} sits outside the band around the estimate {estimate:.3}"
        )));
    }
    Ok((count, estimate))
}

//! Contour measurements over the branch structure of log zeta: cut jumps,
//! one-sided contour limits, and argument-principle winding counts.
//!
//! Limits toward a cut are taken by offset extrapolation: evaluate on a
//! ladder of offsets, each half the last, and Richardson-extrapolate the
//! first two error orders away. No path ever touches a cut or enters the
//! exclusion radius of a singularity.

use std::f64::consts::PI;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::{richardson, segment};
use crate::zeta::continuation::{continue_log, continue_log_zeta, BranchTrace, PathPolyline};
use crate::zeta::eval::{zeta_log_deriv_unchecked, zeta_unchecked};
use crate::zeta::{ACCURACY_BOX, EXCLUSION_RADIUS};
use crate::Complex;

/// Matched probe positions per cut measurement.
const CUT_SAMPLES: usize = 9;
/// The extrapolated jump must be this constant across probe positions.
const CONSTANCY_TOL: f64 = 1e-4;
/// Step bound for measurement traces.
const MEASURE_MAX_STEP: f64 = 0.25;
/// Base offset for the rogue-zero experiment ladder.
const ROGUE_OFFSET: f64 = 8e-3;
/// The counting rectangle's bottom edge sits here, between the real axis
/// (with the pole at s = 1) and the lowest zero ordinate.
const COUNT_BOTTOM: f64 = 0.5;
/// A winding number farther than this from an integer is reported, not rounded.
const WINDING_TOL: f64 = 0.01;

fn check_offset(offset: f64) -> Result<()> {
    if !offset.is_finite() || offset < 4.0 * EXCLUSION_RADIUS {
        return Err(Error::Config(format!(
            "offset {offset} too small: the extrapolation ladder reaches offset/4, \
             which must stay at or above the exclusion radius {EXCLUSION_RADIUS}"
        )));
    }
    Ok(())
}

fn ladder(offset: f64) -> [f64; 3] {
    [offset, 0.5 * offset, 0.25 * offset]
}

fn im_at(trace: &BranchTrace, target: Complex) -> Result<f64> {
    trace
        .points()
        .iter()
        .find(|(s, _)| (s - target).norm() < 1e-12)
        .map(|(_, log)| log.im)
        .ok_or_else(|| Error::Inconsistent(format!("trace recorded no sample at {target}")))
}

/// Trace from `anchor` vertically to height `im`, then left through each of
/// `sigmas` (descending); return Im log zeta at those probes.
fn horizontal_probe(
    anchor: Complex,
    im: f64,
    sigmas: &[f64],
    known_zeros: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let mut vertices = vec![anchor, Complex::new(anchor.re, im)];
    vertices.extend(sigmas.iter().map(|&sg| Complex::new(sg, im)));
    let path = PathPolyline::new(vertices, MEASURE_MAX_STEP, known_zeros)?;
    let trace = continue_log_zeta(&path, None, cfg)?;
    sigmas.iter().map(|&sg| im_at(&trace, Complex::new(sg, im))).collect()
}

/// Jump of Im log zeta across the horizontal cut at `height`: the value
/// continued to just below minus the value continued to just above, at
/// matched positions across `sigma_range`, extrapolated to offset zero.
/// Both branches are continued from the common anchor at `2 + i height`.
///
/// # Errors
///
/// `Config` for an empty range or an offset whose ladder would enter the
/// exclusion radius; `Inconsistent` when the extrapolated jump varies along
/// the range by more than 1e-4 (the range straddles a cut terminus);
/// admission and continuation errors pass through.
pub fn measure_cut_jump(
    sigma_range: (f64, f64),
    height: f64,
    offset: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (lo, hi) = (sigma_range.0.min(sigma_range.1), sigma_range.0.max(sigma_range.1));
    if !(lo < hi) {
        return Err(Error::Config(format!("sigma range ({lo}, {hi}) is empty")));
    }
    check_offset(offset)?;
    // Strictly interior samples: the range endpoints may be cut termini
    // (the pole, a trivial zero), where no two-sided jump exists.
    let sigmas: Vec<f64> = (0..CUT_SAMPLES)
        .map(|k| hi - (hi - lo) * (k + 1) as f64 / (CUT_SAMPLES + 1) as f64)
        .collect();
    let anchor = Complex::new(2.0, height);

    let mut jumps_per_offset = Vec::with_capacity(3);
    for o in ladder(offset) {
        let above = horizontal_probe(anchor, height + o, &sigmas, &[], cfg)?;
        let below = horizontal_probe(anchor, height - o, &sigmas, &[], cfg)?;
        let jumps: Vec<f64> = below.iter().zip(&above).map(|(b, a)| b - a).collect();
        jumps_per_offset.push(jumps);
    }

    let mut lowest = f64::INFINITY;
    let mut highest = f64::NEG_INFINITY;
    let mut total = 0.0;
    let per_sample = jumps_per_offset[0]
        .iter()
        .zip(&jumps_per_offset[1])
        .zip(&jumps_per_offset[2]);
    for ((&first, &second), &third) in per_sample {
        let (value, _) = richardson(&[first, second, third], &[1, 2]);
        lowest = lowest.min(value);
        highest = highest.max(value);
        total += value;
    }
    if highest - lowest > CONSTANCY_TOL {
        return Err(Error::Inconsistent(format!(
            "cut jump varies from {lowest:.6} to {highest:.6} across sigma in ({lo}, {hi}); \
             the range straddles a cut terminus"
        )));
    }
    Ok(total / CUT_SAMPLES as f64)
}

/// One-sided limit of Im log zeta approaching the real axis from above at
/// `sigma`, continued from the anchor at 2 and extrapolated to offset zero.
/// Left of the pole this walks the stair-step of upper-contour limits
/// (-pi between -2 and 1, then 0, pi, 2pi, ... at each trivial zero).
///
/// # Errors
///
/// `Config` for a too-small offset; admission and continuation errors pass
/// through.
pub fn measure_upper_limit(sigma: f64, offset: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_offset(offset)?;
    let anchor = Complex::new(2.0, 0.0);
    let mut values = [0.0; 3];
    for (slot, o) in values.iter_mut().zip(ladder(offset)) {
        *slot = horizontal_probe(anchor, o, &[sigma], &[], cfg)?[0];
    }
    let (value, _) = richardson(&values, &[1, 2]);
    Ok(value)
}

/// Jump of Im log zeta across the cut ending at the `zero_index`-th zero
/// (1-based) of `ordinates`: the branch continued to just below the zero's
/// height minus the branch continued to just above, probed at `sigma` left
/// of the critical line, from a common anchor at 2, extrapolated to offset
/// zero.
///
/// # Errors
///
/// `Config` for an out-of-range index, a probe not left of the critical
/// line, or a too-small offset; admission and continuation errors pass
/// through.
pub fn measure_critical_cut_jump(
    ordinates: &[f64],
    zero_index: usize,
    sigma: f64,
    offset: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if zero_index == 0 || zero_index > ordinates.len() {
        return Err(Error::Config(format!(
            "zero_index {zero_index} out of range 1..={}",
            ordinates.len()
        )));
    }
    if !(sigma < 0.5) {
        return Err(Error::Config(format!(
            "probe sigma {sigma} must lie strictly left of the critical line"
        )));
    }
    check_offset(offset)?;
    let gamma = ordinates[zero_index - 1];
    let anchor = Complex::new(2.0, 0.0);

    let mut jumps = [0.0; 3];
    for (slot, o) in jumps.iter_mut().zip(ladder(offset)) {
        let below = horizontal_probe(anchor, gamma - o, &[sigma], ordinates, cfg)?[0];
        let above = horizontal_probe(anchor, gamma + o, &[sigma], ordinates, cfg)?[0];
        *slot = below - above;
    }
    let (value, _) = richardson(&jumps, &[1, 2]);
    Ok(value)
}

/// Plant two artificial zeros at `r1`, `r2` (same height, straddling the
/// critical line inside the strip) and measure the cut jumps of
/// log[zeta(s) (s - r1)(s - r2)] across their common height: left of both
/// zeros, and between them. Jumps are reported relative to the artificial
/// zeros alone; any contribution from a genuine cut at the same height
/// cancels against a matched plain-zeta trace. The jump is oriented above
/// minus below, so each planted zero adds +2pi on segments left of it:
/// (4pi, 2pi) for simple zeros.
///
/// # Errors
///
/// `Domain` unless re r1 in (0, 1/2), re r2 in (1/2, 1), the heights match,
/// and the height keeps the probes away from the real axis; continuation
/// errors pass through.
pub fn rogue_experiment(
    r1: Complex,
    r2: Complex,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    if r1.im != r2.im {
        return Err(Error::Domain(format!(
            "rogue zeros must share a height, got {} and {}",
            r1.im, r2.im
        )));
    }
    if !(r1.re > 0.0 && r1.re < 0.5 && r2.re > 0.5 && r2.re < 1.0) {
        return Err(Error::Domain(format!(
            "rogue zeros must straddle the critical line inside the strip, got {r1} and {r2}"
        )));
    }
    let gamma = r1.im;
    if !(gamma > 1.0 && gamma + ROGUE_OFFSET <= ACCURACY_BOX.im_max) {
        return Err(Error::Domain(format!("rogue height {gamma} out of measurable range")));
    }

    let sigma_left = 0.5 * r1.re;
    let sigma_mid = 0.5 * (r1.re + r2.re);
    let anchor = Complex::new(2.0, gamma);

    let probe = |o: f64| -> Result<(f64, f64)> {
        let mut per_side = [(0.0, 0.0); 2];
        for (side_slot, side) in per_side.iter_mut().zip([-1.0, 1.0]) {
            let im = gamma + side * o;
            let vertices = vec![
                anchor,
                Complex::new(2.0, im),
                Complex::new(sigma_mid, im),
                Complex::new(sigma_left, im),
            ];
            let path = PathPolyline::new(vertices, MEASURE_MAX_STEP, &[])?;
            let planted = continue_log(
                &mut |s: Complex| Ok(zeta_unchecked(s)? * (s - r1) * (s - r2)),
                &mut |s: Complex| {
                    Ok(zeta_log_deriv_unchecked(s)?
                        + Complex::new(1.0, 0.0) / (s - r1)
                        + Complex::new(1.0, 0.0) / (s - r2))
                },
                &path,
                None,
                cfg,
            )?;
            let plain = continue_log_zeta(&path, None, cfg)?;
            let at = |trace: &BranchTrace, sg: f64| im_at(trace, Complex::new(sg, im));
            *side_slot = (
                at(&planted, sigma_left)? - at(&plain, sigma_left)?,
                at(&planted, sigma_mid)? - at(&plain, sigma_mid)?,
            );
        }
        let [below, above] = per_side;
        Ok((above.0 - below.0, above.1 - below.1))
    };

    let mut left = [0.0; 3];
    let mut mid = [0.0; 3];
    for (i, o) in ladder(ROGUE_OFFSET).into_iter().enumerate() {
        let (l, m) = probe(o)?;
        left[i] = l;
        mid[i] = m;
    }
    let (left_value, _) = richardson(&left, &[1, 2]);
    let (mid_value, _) = richardson(&mid, &[1, 2]);
    Ok((left_value, mid_value))
}

/// Count zeros with ordinate below `t_max` by winding zeta'/zeta around the
/// rectangle [-1, 2] x [1/2, t_max]. The bottom edge sits at 1/2 rather
/// than 0 so the contour clears the pole; no zero has ordinate below 1/2,
/// so the count is unchanged.
///
/// # Errors
///
/// `Domain` when the rectangle leaves the accuracy box or has no interior,
/// `Inconsistent` when the winding number refuses to be an integer (the top
/// edge grazes a zero), quadrature errors pass through.
pub fn argument_principle_count(t_max: f64, cfg: &QuadratureConfig) -> Result<i64> {
    if !(t_max > COUNT_BOTTOM + EXCLUSION_RADIUS) || t_max > ACCURACY_BOX.im_max {
        return Err(Error::Domain(format!(
            "counting height {t_max} must lie in ({COUNT_BOTTOM}, {}]",
            ACCURACY_BOX.im_max
        )));
    }
    let corners = [
        Complex::new(-1.0, COUNT_BOTTOM),
        Complex::new(2.0, COUNT_BOTTOM),
        Complex::new(2.0, t_max),
        Complex::new(-1.0, t_max),
        Complex::new(-1.0, COUNT_BOTTOM),
    ];
    let mut total = Complex::new(0.0, 0.0);
    for pair in corners.windows(2) {
        let mut failure = None;
        let outcome = segment(
            &mut |s| match zeta_log_deriv_unchecked(s) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    Complex::new(f64::NAN, f64::NAN)
                }
            },
            pair[0],
            pair[1],
            cfg,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        total += outcome?;
    }
    let winding = total / Complex::new(0.0, 2.0 * PI);
    let count = winding.re.round();
    if (winding.re - count).abs() > WINDING_TOL || winding.im.abs() > WINDING_TOL {
        return Err(Error::Inconsistent(format!(
            "winding number {winding} around [-1,2] x [{COUNT_BOTTOM},{t_max}] is not an integer; \
             the contour likely grazes a zero"
        )));
    }
    Ok(count as i64)
}

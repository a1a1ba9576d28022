//! Analytic continuation of log zeta along polyline paths.
//!
//! The branch is carried by prediction and snapping, never by raw `arg`
//! accumulation: each step integrates zeta'/zeta across the step to predict
//! the phase, then replaces the prediction with `arg zeta + 2 pi k` for the
//! integer k nearest to it. The real part is always `log |zeta|` exactly, so
//! a trace can drift only by whole winding numbers, and the snap guard (no
//! accepted step may move the phase by a quarter turn or more) makes that
//! impossible while steps keep resolving the phase. Steps halve on any
//! suspicion and the trace fails loudly if halving reaches the floor.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::qk15;
use crate::zeta::eval::{zeta_log_deriv_unchecked, zeta_unchecked};
use crate::zeta::{ensure_in_box, EXCLUSION_RADIUS};
use crate::Complex;

/// Steps shorter than this abort the trace; the phase is changing too fast
/// to follow, which in practice means an unlisted singularity.
const STEP_FLOOR: f64 = 1e-6;
/// Relative mismatch allowed between a supplied starting log and the actual
/// function value at the path start.
const ANCHOR_REL_TOL: f64 = 1e-8;
/// A step whose phase predictor carries more than this much estimated error
/// cannot be trusted to pick the right sheet.
const PREDICTOR_ERROR_CAP: f64 = 0.5;

/// A piecewise-linear path admitted for branch tracking: every vertex inside
/// the accuracy box and every segment clear of the pole, the trivial zeros,
/// and the nontrivial zeros declared at construction.
#[derive(Debug, Clone)]
pub struct PathPolyline {
    vertices: Vec<Complex>,
    max_step: f64,
}

impl PathPolyline {
    /// Validate and admit a path. `known_zeros` lists nontrivial zero
    /// ordinates; both the zero and its conjugate count as obstacles.
    ///
    /// # Errors
    ///
    /// `Config` for a non-positive `max_step`, `PathRejected` for fewer than
    /// two vertices, a vertex outside the accuracy box, or a segment passing
    /// within `EXCLUSION_RADIUS` of a known singularity.
    pub fn new(vertices: Vec<Complex>, max_step: f64, known_zeros: &[f64]) -> Result<Self> {
        if !(max_step > 0.0) || !max_step.is_finite() {
            return Err(Error::Config(format!("max_step must be positive, got {max_step}")));
        }
        if vertices.len() < 2 {
            return Err(Error::PathRejected(format!(
                "a path needs at least two vertices, got {}",
                vertices.len()
            )));
        }
        for (i, &v) in vertices.iter().enumerate() {
            ensure_in_box("path vertex", v)
                .map_err(|_| Error::PathRejected(format!("vertex {i} at {v} leaves the accuracy box")))?;
        }

        let mut obstacles = vec![Complex::new(1.0, 0.0)];
        let mut trivial = -2.0;
        while trivial >= -12.0 {
            obstacles.push(Complex::new(trivial, 0.0));
            trivial -= 2.0;
        }
        for &g in known_zeros {
            obstacles.push(Complex::new(0.5, g));
            obstacles.push(Complex::new(0.5, -g));
        }

        for (i, pair) in vertices.windows(2).enumerate() {
            for &p in &obstacles {
                let d = segment_distance(p, pair[0], pair[1]);
                if d < EXCLUSION_RADIUS {
                    return Err(Error::PathRejected(format!(
                        "segment {i} ({} to {}) passes within {d:.2e} of the singularity at {p}",
                        pair[0], pair[1]
                    )));
                }
            }
        }
        Ok(Self { vertices, max_step })
    }

    /// The admitted vertices, in traversal order.
    pub fn vertices(&self) -> &[Complex] {
        &self.vertices
    }

    /// Upper bound on the length of one continuation step.
    pub fn max_step(&self) -> f64 {
        self.max_step
    }
}

fn segment_distance(p: Complex, a: Complex, b: Complex) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re + (p - a).im * ab.im) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab.scale(t))).norm()
}

/// A completed continuation: sample locations paired with the branch-tracked
/// logarithm at each.
#[derive(Debug, Clone)]
pub struct BranchTrace {
    points: Vec<(Complex, Complex)>,
}

impl BranchTrace {
    /// All `(location, log value)` samples, path start first.
    pub fn points(&self) -> &[(Complex, Complex)] {
        &self.points
    }

    /// The log at the path start (the anchor, recorded verbatim).
    pub fn start_log(&self) -> Complex {
        self.points[0].1
    }

    /// The log at the path end, on the sheet the trace arrived at.
    pub fn final_log(&self) -> Complex {
        self.points[self.points.len() - 1].1
    }

    /// The sample at index `i`, if there is one.
    pub fn log_at(&self, i: usize) -> Option<(Complex, Complex)> {
        self.points.get(i).copied()
    }

    /// Number of samples in the trace.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the trace holds no samples (never true for a completed trace).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Write the trace as CSV with header `sigma,t,re_log,im_log`.
    ///
    /// # Errors
    ///
    /// `Io` if the sink refuses the write.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "sigma,t,re_log,im_log")?;
        for &(s, log) in &self.points {
            writeln!(out, "{},{},{},{}", s.re, s.im, log.re, log.im)?;
        }
        Ok(())
    }
}

enum StepVerdict {
    Accept(Complex),
    Retry,
}

fn attempt_step<G>(
    log_deriv: &mut G,
    a: Complex,
    b: Complex,
    current_log: Complex,
    value_at_b: Complex,
) -> StepVerdict
where
    G: FnMut(Complex) -> Result<Complex>,
{
    let delta = b - a;
    let mut eval_failed = false;
    let panel = qk15(
        &mut |t| match log_deriv(a + delta.scale(t)) {
            Ok(v) => v * delta,
            Err(_) => {
                eval_failed = true;
                Complex::new(f64::NAN, f64::NAN)
            }
        },
        0.0,
        1.0,
    );
    if eval_failed
        || !panel.value.re.is_finite()
        || !panel.value.im.is_finite()
        || panel.abserr > PREDICTOR_ERROR_CAP
    {
        return StepVerdict::Retry;
    }

    let magnitude = value_at_b.norm();
    if !(magnitude > 0.0) || !magnitude.is_finite() {
        return StepVerdict::Retry;
    }
    let predicted_im = current_log.im + panel.value.im;
    let arg = value_at_b.arg();
    let winding = ((predicted_im - arg) / (2.0 * PI)).round();
    let im = arg + 2.0 * PI * winding;
    if (im - current_log.im).abs() >= FRAC_PI_4 {
        return StepVerdict::Retry;
    }
    StepVerdict::Accept(Complex::new(magnitude.ln(), im))
}

/// Carry `log value` along `path` for an arbitrary analytic function given by
/// its values and its logarithmic derivative.
pub(crate) fn continue_log<F, G>(
    value: &mut F,
    log_deriv: &mut G,
    path: &PathPolyline,
    start_log: Option<Complex>,
    cfg: &QuadratureConfig,
) -> Result<BranchTrace>
where
    F: FnMut(Complex) -> Result<Complex>,
    G: FnMut(Complex) -> Result<Complex>,
{
    cfg.validate()?;
    let start = path.vertices[0];
    let start_value = value(start)?;
    let current_log = match start_log {
        Some(supplied) => {
            let mismatch = (supplied.exp() - start_value).norm();
            if mismatch > ANCHOR_REL_TOL * start_value.norm() {
                return Err(Error::AnchorMismatch(format!(
                    "exp(start log) is {} but the function value at {start} is {start_value} \
                     (mismatch {mismatch:.3e})",
                    supplied.exp()
                )));
            }
            supplied
        }
        None => {
            let v = start_value;
            Complex::new(v.norm().ln(), v.arg())
        }
    };

    let step_budget = cfg.max_subdivisions * 16;
    let mut trace = BranchTrace { points: vec![(start, current_log)] };
    let mut current_log = current_log;

    for pair in path.vertices.windows(2) {
        let (seg_start, seg_end) = (pair[0], pair[1]);
        let seg_len = (seg_end - seg_start).norm();
        if seg_len == 0.0 {
            continue;
        }
        let dir = (seg_end - seg_start).scale(1.0 / seg_len);
        let mut done = 0.0;
        let mut h = path.max_step.min(seg_len);
        loop {
            let last = seg_len - done <= h;
            let (b, step_len) = if last {
                (seg_end, seg_len - done)
            } else {
                (seg_start + dir.scale(done + h), h)
            };
            let a = seg_start + dir.scale(done);
            let value_at_b = match value(b) {
                Ok(v) => v,
                Err(e) => {
                    // The endpoint itself cannot move; shorter steps kill
                    // the same evaluation, so report the real failure.
                    if step_len < STEP_FLOOR {
                        return Err(e);
                    }
                    h *= 0.5;
                    continue;
                }
            };
            match attempt_step(log_deriv, a, b, current_log, value_at_b) {
                StepVerdict::Accept(new_log) => {
                    current_log = new_log;
                    trace.points.push((b, new_log));
                    if trace.points.len() > step_budget {
                        return Err(Error::Convergence(format!(
                            "continuation exceeded {step_budget} steps; raise max_subdivisions \
                             or shorten the path"
                        )));
                    }
                    if last {
                        break;
                    }
                    done += step_len;
                    h = (h * 2.0).min(path.max_step);
                }
                StepVerdict::Retry => {
                    h *= 0.5;
                    if h < STEP_FLOOR {
                        return Err(Error::StepCollapse { at: b, step: h });
                    }
                }
            }
        }
    }
    Ok(trace)
}

/// Track log zeta along `path`.
///
/// With `start_log: None` the trace anchors on the principal logarithm of
/// zeta at the first vertex; a supplied starting log must agree with the
/// function value there (any 2 pi multiple in the imaginary part is
/// legitimate and selects the sheet the trace rides).
///
/// # Errors
///
/// `AnchorMismatch` when the supplied log contradicts the value at the start,
/// `StepCollapse` when step halving hits the floor (an unlisted singularity
/// on or next to the path), `Convergence` when the step budget runs out, or
/// any error from evaluating zeta itself.
pub fn continue_log_zeta(
    path: &PathPolyline,
    start_log: Option<Complex>,
    cfg: &QuadratureConfig,
) -> Result<BranchTrace> {
    continue_log(
        &mut zeta_unchecked,
        &mut zeta_log_deriv_unchecked,
        path,
        start_log,
        cfg,
    )
}

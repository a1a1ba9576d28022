//! Adaptive Gauss-Kronrod integration and Richardson extrapolation.
//!
//! The 15-point Gauss-Kronrod rule with the classic error rescaling drives a
//! global bisection strategy: the interval with the worst error estimate is
//! split until the summed error meets the configured tolerance. The kernel is
//! generic over real and complex integrands so path integrals in the complex
//! plane share the same machinery.

use num_complex::Complex64;
use std::collections::BinaryHeap;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};

/// Scalar types the quadrature kernel can integrate.
pub trait QuadValue: Copy {
    /// Additive identity.
    fn zero() -> Self;
    /// Sum of two values.
    fn add(self, other: Self) -> Self;
    /// Difference of two values.
    fn sub(self, other: Self) -> Self;
    /// Multiplication by a real scalar.
    fn scale(self, k: f64) -> Self;
    /// Modulus.
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(self) -> f64 {
        num_complex::ComplexFloat::abs(self)
    }
}

/// Abscissae of the 15-point Kronrod rule on [-1, 1]; odd entries are the
/// embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 7-point Gauss rule.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Weights of the 15-point Kronrod rule.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Result of a single Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel<T> {
    /// Kronrod estimate of the integral.
    pub value: T,
    /// Error estimate after rescaling.
    pub abserr: f64,
    /// Approximation to the integral of |f|.
    pub resabs: f64,
}

/// Sharpened error estimate, following the classic QUADPACK heuristic.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut abserr = err.abs();
    if resasc != 0.0 && abserr != 0.0 {
        let scale = (200.0 * abserr / resasc).powf(1.5);
        abserr = if scale < 1.0 { resasc * scale } else { resasc };
    }
    let min_pos = f64::MIN_POSITIVE;
    if resabs > min_pos / (50.0 * f64::EPSILON) {
        abserr = abserr.max(50.0 * f64::EPSILON * resabs);
    }
    abserr
}

/// One 15-point Gauss-Kronrod panel over [a, b].
pub fn qk15<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> Panel<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let half_abs = half.abs();

    let fc = f(center);
    let mut res_gauss = fc.scale(WG[3]);
    let mut res_kronrod = fc.scale(WGK[7]);
    let mut resabs = res_kronrod.norm();

    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        let fsum = fv1[j].add(fv2[j]);
        if j % 2 == 1 {
            res_gauss = res_gauss.add(fsum.scale(WG[j / 2]));
        }
        res_kronrod = res_kronrod.add(fsum.scale(WGK[j]));
        resabs += WGK[j] * (fv1[j].norm() + fv2[j].norm());
    }

    let mean = res_kronrod.scale(0.5);
    let mut resasc = WGK[7] * fc.sub(mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * (fv1[j].sub(mean).norm() + fv2[j].sub(mean).norm());
    }

    resabs *= half_abs;
    resasc *= half_abs;
    let raw_err = res_kronrod.sub(res_gauss).norm() * half_abs;

    Panel {
        value: res_kronrod.scale(half),
        abserr: rescale_error(raw_err, resabs, resasc),
        resabs,
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    abserr: f64,
}

impl<T: Copy> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.abserr == other.abserr
    }
}
impl<T: Copy> Eq for Segment<T> {}
impl<T: Copy> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Copy> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.abserr.total_cmp(&other.abserr)
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome<T> {
    /// Integral estimate.
    pub value: T,
    /// Summed error estimate over all segments.
    pub abserr: f64,
    /// Bisections performed.
    pub subdivisions: usize,
}

/// Integrates `f` over [a, b] by globally adaptive bisection.
///
/// Orientation is respected: `a > b` flips the sign. Fails with a
/// convergence error when the subdivision budget is exhausted before the
/// summed error estimate drops under `max(abs_tol, rel_tol * |value|)`.
pub fn adaptive<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadOutcome<T>> {
    if a == b {
        return Ok(QuadOutcome { value: T::zero(), abserr: 0.0, subdivisions: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let span = hi - lo;

    let first = qk15(&mut f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a: lo, b: hi, value: first.value, abserr: first.abserr });
    let mut total = first.value;
    let mut errsum = first.abserr;
    let mut subdivisions = 0usize;

    loop {
        let target = cfg.tolerance_for(total.norm());
        if errsum <= target {
            break;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::Convergence(format!(
                "adaptive quadrature on [{lo}, {hi}] stalled at error {errsum:.3e} \
                 (target {target:.3e}) after {subdivisions} subdivisions"
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        // Width floor: below it the panel error is pure roundoff and further
        // splitting cannot help.
        if (worst.b - worst.a) < 1e-15 * span {
            let achieved = errsum;
            if achieved <= 10.0 * target {
                heap.push(worst);
                break;
            }
            return Err(Error::Convergence(format!(
                "integrand too rough near [{:.6e}, {:.6e}]: error {achieved:.3e} vs target {target:.3e}",
                worst.a, worst.b
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = qk15(&mut f, worst.a, mid);
        let right = qk15(&mut f, mid, worst.b);
        total = total.sub(worst.value).add(left.value).add(right.value);
        errsum = errsum - worst.abserr + left.abserr + right.abserr;
        heap.push(Segment { a: worst.a, b: mid, value: left.value, abserr: left.abserr });
        heap.push(Segment { a: mid, b: worst.b, value: right.value, abserr: right.abserr });
        subdivisions += 1;
    }

    Ok(QuadOutcome { value: total.scale(sign), abserr: errsum, subdivisions })
}

/// Integrates a complex function along the straight segment from `a` to `b`.
pub fn segment(
    f: &mut impl FnMut(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let dir = b - a;
    if dir.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let out = adaptive(|t| f(a + dir.scale(t)) * dir, 0.0, 1.0, cfg)?;
    Ok(out.value)
}

/// Richardson extrapolation for a sequence sampled at geometrically
/// shrinking step sizes `h, h/2, h/4, ...`.
///
/// `powers` lists the exponents present in the error expansion, smallest
/// first; `[1, 2, 3]` for a full Taylor tail, `[1, 3, 5]` when symmetry
/// cancels the even orders. Returns the accelerated value and a conservative
/// error estimate (the last diagonal correction).
pub fn richardson(samples: &[f64], powers: &[usize]) -> (f64, f64) {
    assert!(!samples.is_empty());
    let mut diag = samples.to_vec();
    let mut best = *samples.last().expect("non-empty");
    let mut err = f64::INFINITY;
    let stages = powers.len().min(samples.len() - 1);
    for &p in powers.iter().take(stages) {
        let c = (1u64 << p) as f64;
        let prev_last = *diag.last().expect("non-empty");
        let mut next = Vec::with_capacity(diag.len() - 1);
        for i in 0..diag.len() - 1 {
            next.push((c * diag[i + 1] - diag[i]) / (c - 1.0));
        }
        diag = next;
        let new_last = *diag.last().expect("non-empty");
        err = (new_last - prev_last).abs();
        best = new_last;
    }
    (best, err)
}

//! Exact, sieve-based ground truth: the prime-counting step functions and
//! their Möbius inversion, carried in rational arithmetic end to end.
//!
//! F(x) counts primes strictly below x, jumping by 1/2 at each prime; the
//! weighted count f(x) adds Σ (1/n) F(x^{1/n}). Keeping every value an
//! exact rational makes the inversion identity a literal equality, so the
//! analytic side of the project can be judged against these functions with
//! no numerical slop on this side of the comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact value of a prime-counting step function: half-integral multiples
/// of 1/n with n bounded by log x / log 2.
pub type StepValue = BigRational;

const SIEVE_LIMIT_MAX: u64 = 100_000_000;

/// Ascending primes up to a fixed limit.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Inclusive sieving bound.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Every prime up to the limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of primes strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        self.primes.partition_point(|&p| (p as f64) < x)
    }

    fn is_prime(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Sieve of Eratosthenes up to `limit` inclusive.
///
/// # Errors
///
/// `Domain` outside 2 ≤ limit ≤ 1e8.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if !(2..=SIEVE_LIMIT_MAX).contains(&limit) {
        return Err(Error::Domain(format!(
            "sieve limit {limit} outside 2..={SIEVE_LIMIT_MAX}"
        )));
    }
    let mut composite = vec![0u64; limit as usize / 64 + 1];
    let mut p = 2u64;
    while p * p <= limit {
        if composite[p as usize / 64] >> (p % 64) & 1 == 0 {
            let mut m = p * p;
            while m <= limit {
                composite[m as usize / 64] |= 1 << (m % 64);
                m += p;
            }
        }
        p += 1;
    }
    let primes = (2..=limit)
        .filter(|&n| composite[n as usize / 64] >> (n % 64) & 1 == 0)
        .collect();
    Ok(PrimeTable { limit, primes })
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// The prime step count F(x): the number of primes strictly below x, plus
/// 1/2 exactly at a prime (the jump convention that makes the analytic
/// formula converge to the step midpoint).
///
/// # Errors
///
/// `Domain` when x is not finite or exceeds the table limit.
pub fn big_f_step(x: f64, table: &PrimeTable) -> Result<StepValue> {
    if !x.is_finite() || x > table.limit() as f64 {
        return Err(Error::Domain(format!(
            "step function argument {x} outside the sieved range ..={}",
            table.limit()
        )));
    }
    let mut value = BigRational::from_integer(BigInt::from(table.count_below(x)));
    // Limits up to 1e8 keep every prime exactly representable, so this
    // equality test is exact.
    if x.fract() == 0.0 && x >= 2.0 && table.is_prime(x as u64) {
        value += half();
    }
    Ok(value)
}

/// Largest n with 2^n ≤ x, the shared truncation bound of both step sums.
fn power_bound(x: f64) -> u32 {
    let mut n = 0u32;
    let mut pw = 1u128;
    while (2 * pw) as f64 <= x {
        pw *= 2;
        n += 1;
    }
    n
}

/// The weighted count f(x) = Σ_{n ≥ 1} (1/n) F(x^{1/n}), which steps by
/// 1/n at every prime power p^n. Roots are never taken in floating point:
/// each term counts primes with p^n below (or exactly at) x through exact
/// integer powers.
///
/// # Errors
///
/// `Domain` when x < 1 or x exceeds the table limit.
pub fn small_f_step(x: f64, table: &PrimeTable) -> Result<StepValue> {
    if !(x >= 1.0) || x > table.limit() as f64 {
        return Err(Error::Domain(format!(
            "step function argument {x} outside 1..={}",
            table.limit()
        )));
    }
    let mut value = StepValue::zero();
    for n in 1..=power_bound(x) {
        let mut below = 0u32;
        let mut at = false;
        for &p in table.primes() {
            // p^n ≤ x ≤ 1e8 < 2^53 whenever it matters, so the comparison
            // in f64 is exact.
            let pn = match (p as u128).checked_pow(n) {
                Some(pn) if (pn as f64) <= x => pn,
                _ => break,
            };
            if (pn as f64) < x {
                below += 1;
            } else {
                at = true;
            }
        }
        let mut term = BigRational::from_integer(BigInt::from(below));
        if at {
            term += half();
        }
        value += term / BigInt::from(n);
    }
    Ok(value)
}

/// Möbius μ(n) by trial factorization: 0 on a squared factor, else ±1 by
/// the parity of the prime divisor count.
///
/// # Errors
///
/// `Domain` for n = 0.
pub fn moebius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain("moebius is defined for n >= 1".into()));
    }
    let mut rest = n;
    let mut factors = 0u32;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        d += 1;
    }
    if rest > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// A sum term that can absorb a Möbius-weighted contribution (μ(n)/n) · f.
/// Implemented for the exact rational currency and for plain f64 so the
/// same inversion drives both the step oracle and analytic evaluations.
pub trait MobiusWeighted: Sized {
    /// The empty sum.
    fn empty() -> Self;
    /// Fold in one term scaled by mu/n.
    fn add_weighted(&mut self, mu: i32, n: u32, term: Self);
}

impl MobiusWeighted for f64 {
    fn empty() -> Self {
        0.0
    }

    fn add_weighted(&mut self, mu: i32, n: u32, term: Self) {
        *self += f64::from(mu) / f64::from(n) * term;
    }
}

impl MobiusWeighted for StepValue {
    fn empty() -> Self {
        StepValue::zero()
    }

    fn add_weighted(&mut self, mu: i32, n: u32, term: Self) {
        *self += term * BigRational::new(BigInt::from(mu), BigInt::from(n));
    }
}

/// The root x^{1/n}, snapped to the exact integer root when x is an exact
/// integer n-th power. The snap is what keeps the inversion exact at prime
/// powers, where a one-ulp-low root would land on the wrong side of a jump.
fn nth_root(x: f64, n: u32) -> f64 {
    let root = x.powf(1.0 / f64::from(n));
    let snapped = root.round();
    if snapped >= 2.0 && x.fract() == 0.0 && x < 9e15 {
        if let Some(pw) = (snapped as u128).checked_pow(n) {
            if pw as f64 == x {
                return snapped;
            }
        }
    }
    root
}

/// Möbius inversion F(x) = Σ_{n ≤ log x / log 2} (μ(n)/n) · f(x^{1/n}),
/// for any evaluation of f: the exact step oracle or an analytic formula.
/// Terms with μ(n) = 0 are skipped without evaluating f; every argument
/// passed to `f_eval` lies in [2, x].
///
/// # Errors
///
/// `Domain` for x ≤ 1; evaluation errors pass through.
pub fn big_f_from_small_f<T, F>(x: f64, mut f_eval: F) -> Result<T>
where
    T: MobiusWeighted,
    F: FnMut(f64) -> Result<T>,
{
    if !(x > 1.0) {
        return Err(Error::Domain(format!("inversion needs x > 1, got {x}")));
    }
    let mut total = T::empty();
    for n in 1..=power_bound(x) {
        let mu = moebius(u64::from(n))?;
        if mu == 0 {
            continue;
        }
        let term = f_eval(nth_root(x, n))?;
        total.add_weighted(mu, n, term);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn rational(num: i64, den: i64) -> StepValue {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn sieve_matches_hand_lists() {
        assert_eq!(sieve(10).unwrap().primes(), [2, 3, 5, 7]);
        assert_eq!(sieve(2).unwrap().primes(), [2]);
        assert_eq!(sieve(30).unwrap().primes(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sieve_rejects_out_of_range_limits() {
        assert!(matches!(sieve(1), Err(Error::Domain(_))));
        assert!(matches!(sieve(SIEVE_LIMIT_MAX + 1), Err(Error::Domain(_))));
    }

    #[test]
    fn sieve_agrees_with_independent_segmented_count() {
        // Independent oracle: segmented sieve with trial-division base
        // primes, sharing no code with the implementation above.
        let limit = 1_000_000u64;
        let trial_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        let base: Vec<u64> = (2..=1000).filter(|&n| trial_prime(n)).collect();
        let mut count = 0usize;
        let segment = 100_000u64;
        let mut lo = 2u64;
        while lo <= limit {
            let hi = (lo + segment - 1).min(limit);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &base {
                if p * p > hi {
                    break;
                }
                let mut m = (lo.div_ceil(p) * p).max(p * p);
                while m <= hi {
                    composite[(m - lo) as usize] = true;
                    m += p;
                }
            }
            count += composite.iter().filter(|&&c| !c).count();
            lo = hi + 1;
        }
        assert_eq!(count, 78_498);
        assert_eq!(sieve(limit).unwrap().primes().len(), count);
    }

    #[test]
    fn big_f_matches_printed_values() {
        let pt = sieve(100).unwrap();
        assert_eq!(big_f_step(10.0, &pt).unwrap(), rational(4, 1));
        assert_eq!(big_f_step(5.0, &pt).unwrap(), rational(5, 2));
        assert_eq!(big_f_step(2.0, &pt).unwrap(), rational(1, 2));
        assert_eq!(big_f_step(1.5, &pt).unwrap(), rational(0, 1));
    }

    #[test]
    fn small_f_matches_printed_values() {
        let pt = sieve(100).unwrap();
        assert_eq!(small_f_step(2.0, &pt).unwrap(), rational(1, 2));
        assert_eq!(small_f_step(3.0, &pt).unwrap(), rational(3, 2));
        assert_eq!(small_f_step(4.0, &pt).unwrap(), rational(9, 4));
        assert_eq!(small_f_step(10.0, &pt).unwrap(), rational(16, 3));
    }

    #[test]
    fn jump_inventory_up_to_one_thousand() {
        // f jumps by exactly 1/n at p^n and sits at the midpoint there.
        let pt = sieve(1024).unwrap();
        let delta = 1e-6;
        let mut prime_powers = 0;
        for &p in pt.primes() {
            let mut n = 1u32;
            loop {
                let pn = match (p as u128).checked_pow(n) {
                    Some(pn) if pn <= 1000 => pn as f64,
                    _ => break,
                };
                let left = small_f_step(pn - delta, &pt).unwrap();
                let right = small_f_step(pn + delta, &pt).unwrap();
                let at = small_f_step(pn, &pt).unwrap();
                let jump = rational(1, i64::from(n));
                assert_eq!(&right - &left, jump, "jump at {p}^{n}");
                assert_eq!(&at - &left, jump / BigInt::from(2), "midpoint at {p}^{n}");
                prime_powers += 1;
                n += 1;
            }
        }
        assert_eq!(prime_powers, 193);
    }

    #[test]
    fn moebius_small_values() {
        let want = [(1, 1), (2, -1), (3, -1), (4, 0), (6, 1), (12, 0), (30, -1), (210, 1)];
        for (n, mu) in want {
            assert_eq!(moebius(n).unwrap(), mu, "mu({n})");
        }
        assert!(matches!(moebius(0), Err(Error::Domain(_))));
    }

    #[test]
    fn moebius_divisor_sums_collapse() {
        for n in 1..=10_000u64 {
            let total: i32 = (1..=n).filter(|d| n % d == 0).map(|d| moebius(d).unwrap()).sum();
            assert_eq!(total, i32::from(n == 1), "sum over divisors of {n}");
        }
    }

    #[test]
    fn inversion_visits_squarefree_orders_only() {
        let mut seen = Vec::new();
        let total: f64 = big_f_from_small_f(10.0, |y| {
            seen.push(y);
            Ok(0.0)
        })
        .unwrap();
        assert_eq!(total, 0.0);
        assert_eq!(seen.len(), 3);
        assert_eq!(seen[0], 10.0);
        assert!((seen[1] - 10f64.sqrt()).abs() < 1e-15);
        assert!((seen[2] - 10f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn inversion_round_trip_is_exact() {
        let pt = sieve(10_000).unwrap();
        // Deterministic congruential points in (2, 10^4), plus the exact
        // prime powers where the root snap carries the half jumps.
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut points: Vec<f64> = (0..200)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                2.0 + (state >> 11) as f64 / (1u64 << 53) as f64 * 9998.0
            })
            .collect();
        points.extend([4.0, 8.0, 9.0, 25.0, 27.0, 32.0, 2048.0, 6561.0, 9409.0]);
        for x in points {
            let from_inversion: StepValue =
                big_f_from_small_f(x, |y| small_f_step(y, &pt)).unwrap();
            let direct = big_f_step(x, &pt).unwrap();
            assert_eq!(from_inversion, direct, "round trip at x = {x}");
            let bound = (1..=i64::from(power_bound(x))).fold(1i64, |l, n| l.lcm(&n));
            assert!(
                (direct * BigInt::from(bound)).is_integer(),
                "denominator bound at x = {x}"
            );
        }
    }

    #[test]
    fn inversion_rejects_degenerate_arguments() {
        assert!(matches!(
            big_f_from_small_f::<f64, _>(1.0, |_| Ok(0.0)),
            Err(Error::Domain(_))
        ));
    }
}

//! γ(s) − ζ(s) = s ∫_1^∞ (t − [t]) t^{-s-1} dt by exact per-interval integration.
//!
//! On [n, n+1) the integrand (t − n) t^{-s-1} has antiderivative
//! t^{1-s}/(1-s) + n t^{-s}/s. Summing N − 1 unit intervals leaves the tail
//! ∫_N^∞, which is bracketed without reference to ζ: writing t − [t] = 1/2 + P′
//! with P the periodic sawtooth primitive (values in [−1/8, 0]) and integrating
//! by parts once gives
//!   N^{-s}/(2s) − N^{-s-1}/8 ≤ tail ≤ N^{-s}/(2s).

use super::{check_digits, Arith, Enclosure, Interval, SpecfunError};

/// Cap on the number of unit intervals summed.
pub const GAP_MAX_INTERVALS: u64 = 20_000;

/// Number of unit intervals needed to push the tail bracket width below `10^-(digits+2)`.
fn interval_count(s: f64, digits: u32, cap: u64) -> u64 {
    // s · N^{-s-1} / 8 ≤ 10^{-(digits+2)}
    let log10_n = (f64::from(digits + 2) + (s / 8.0).log10()) / (s + 1.0);
    let n = 10f64.powf(log10_n).ceil();
    if !n.is_finite() || n > cap as f64 {
        cap
    } else {
        (n as u64).max(16)
    }
}

/// Enclosure of `s ∫_1^∞ (t − [t]) t^{-s-1} dt`.
///
/// For s close to 1 the tail decays slowly and the interval cap bounds the
/// attainable width; the enclosure stays valid but is wider than
/// `10^(2 − digits)`.
pub fn zeta_gap_quadrature(s: f64, digits: u32) -> Result<Enclosure, SpecfunError> {
    zeta_gap_quadrature_with(s, digits, GAP_MAX_INTERVALS)
}

/// Same as [`zeta_gap_quadrature`] with an explicit interval cap.
pub fn zeta_gap_quadrature_with(s: f64, digits: u32, cap: u64) -> Result<Enclosure, SpecfunError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SpecfunError::SeriesDiverges(s));
    }
    check_digits(digits)?;
    let n_max = interval_count(s, digits, cap.max(2));
    // per-interval differences cancel about 2·log2(N) bits
    let extra = 2 * (64 - n_max.leading_zeros() as usize);
    let mut ar = Arith::new(super::bits_for_digits(digits) + extra.div_ceil(64) * 64);
    let si = ar.from_f64(s);
    let one = ar.from_u64(1);
    let one_minus_s = ar.sub(&one, &si);
    let neg_s = ar.neg(&si);

    let mut sum = ar.from_u64(0);
    // p = t^{-s} at the left endpoint
    let mut p_left = one.clone();
    for n in 1..n_max {
        let left = ar.from_u64(n);
        let right = ar.from_u64(n + 1);
        let p_right = ar.pow(&right, &neg_s)?;
        // [t^{1-s}]/(1-s)
        let a = ar.sub(&ar.mul(&right, &p_right), &ar.mul(&left, &p_left));
        let a = ar.div(&a, &one_minus_s)?;
        // n [t^{-s}]/s
        let b = ar.mul(&left, &ar.sub(&p_right, &p_left));
        let b = ar.div(&b, &si)?;
        let piece = ar.add(&a, &b);
        sum = ar.add(&sum, &clamp_nonneg(&ar, piece));
        p_left = p_right;
    }

    let n_big = ar.from_u64(n_max);
    let n_neg_s = p_left;
    let two_s = ar.mul(&ar.from_u64(2), &si);
    let tail_hi = ar.div(&n_neg_s, &two_s)?;
    let correction = ar.div(&ar.div(&n_neg_s, &n_big)?, &ar.from_u64(8))?;
    let tail_lo = ar.sub(&tail_hi, &correction);
    let tail = Interval::new(tail_lo.lo().clone(), tail_hi.hi().clone());
    let integral = ar.add(&sum, &tail);
    let total = ar.mul(&si, &integral);
    Ok(Enclosure::new(total, digits))
}

/// Each unit-interval integral is nonnegative; intersect with [0, ∞).
fn clamp_nonneg(ar: &Arith, x: Interval) -> Interval {
    let zero = ar.from_u64(0);
    if x.lo().is_negative() && !x.lo().is_zero() {
        if x.hi().is_negative() {
            return zero;
        }
        Interval::new(zero.lo().clone(), x.hi().clone())
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_series, riemann_zeta};

    #[test]
    fn gap_at_two() {
        // 2 − π²/6
        let g = zeta_gap_quadrature(2.0, 30).unwrap();
        let v = 0.355_065_933_151_773_56;
        assert!(g.lo_f64() <= v + 1e-15 && v - 1e-15 <= g.hi_f64());
        assert!(g.lo_f64() > 0.0);
        assert!(g.width_f64() < 1e-9);
    }

    #[test]
    fn gap_at_three() {
        // 1.5 − ζ(3)
        let g = zeta_gap_quadrature(3.0, 30).unwrap();
        let v = 0.297_943_096_840_405_71;
        assert!(g.lo_f64() <= v + 1e-15 && v - 1e-15 <= g.hi_f64());
    }

    #[test]
    fn gap_is_positive_on_grid() {
        for i in 0..12 {
            let s = 1.1 + (10.0 - 1.1) * f64::from(i) / 11.0;
            let g = zeta_gap_quadrature_with(s, 20, 2_000).unwrap();
            assert!(g.lo_f64() > 0.0, "s = {s}");
        }
    }

    #[test]
    fn gap_agrees_with_zeta_route() {
        for s in [1.5, 2.0, 5.0] {
            let g = zeta_gap_quadrature_with(s, 20, 4_000).unwrap();
            let z = riemann_zeta(s, 20).unwrap();
            let direct = gamma_series(s).unwrap() - z.mid_f64();
            let slack = g.width_f64() + z.width_f64() + 1e-14;
            assert!((g.mid_f64() - direct).abs() <= slack, "s = {s}");
        }
    }

    #[test]
    fn large_s_meets_width_contract() {
        let g = zeta_gap_quadrature(10.0, 30).unwrap();
        assert!(g.meets_width_contract());
    }

    #[test]
    fn rejects_divergent_s() {
        assert!(zeta_gap_quadrature(1.0, 20).is_err());
    }
}

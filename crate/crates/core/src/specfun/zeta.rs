//! Euler–Maclaurin evaluation of ζ(s, a) for real s > 1, a > 0.
//!
//! ζ(s,a) = Σ_{n<N} (n+a)^{-s} + X^{1-s}/(s-1) + X^{-s}/2
//!        + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · X^{-s-2k+1} + R,
//! with X = N + a. The summand is completely monotone, so |R| is at most the
//! first omitted correction term.

use super::bernoulli::ScaledBernoulli;
use super::{check_digits, Arith, Enclosure, Interval, SpecfunError};

const MAX_CORRECTIONS: usize = 400;

/// Number of directly summed terms: `max(⌈1.5·digits⌉, ⌈|s|⌉ + 10)`.
pub fn shift_count(s: f64, digits: u32) -> u64 {
    let by_digits = (1.5 * f64::from(digits)).ceil() as u64;
    let by_s = s.abs().ceil() as u64 + 10;
    by_digits.max(by_s)
}

/// Riemann zeta ζ(s) = ζ(s, 1).
pub fn riemann_zeta(s: f64, digits: u32) -> Result<Enclosure, SpecfunError> {
    hurwitz_zeta(s, 1.0, digits)
}

/// Hurwitz zeta ζ(s, a) for machine-number arguments.
pub fn hurwitz_zeta(s: f64, a: f64, digits: u32) -> Result<Enclosure, SpecfunError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SpecfunError::SeriesDiverges(s));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(SpecfunError::NonPositiveShift(a));
    }
    check_digits(digits)?;
    let mut ar = Arith::with_digits(digits);
    let si = ar.from_f64(s);
    let ai = ar.from_f64(a);
    let iv = hurwitz_zeta_interval(&mut ar, &si, &ai, digits)?;
    let enc = Enclosure::new(iv, digits);
    if !enc.meets_width_contract() {
        return Err(SpecfunError::Shortfall(format!(
            "ζ({s}, {a}) enclosure wider than 1e-{}",
            digits.saturating_sub(2)
        )));
    }
    Ok(enc)
}

/// Hurwitz zeta for interval arguments, evaluated in the context `ar`.
///
/// The result encloses ζ(s, a) for every `s` and `a` in the argument
/// intervals. `digits` controls the shift count and truncation target only.
pub fn hurwitz_zeta_interval(
    ar: &mut Arith,
    s: &Interval,
    a: &Interval,
    digits: u32,
) -> Result<Interval, SpecfunError> {
    let one = ar.from_u64(1);
    if !s.certainly_gt(&one) {
        return Err(SpecfunError::SeriesDiverges(s.mid_f64()));
    }
    if !a.is_positive() {
        return Err(SpecfunError::NonPositiveShift(a.mid_f64()));
    }
    let n_shift = shift_count(s.hi_f64(), digits);
    let neg_s = ar.neg(s);

    let mut sum = ar.from_u64(0);
    for n in 0..n_shift {
        let x = ar.add(a, &ar.from_u64(n));
        let term = ar.powf(&x, &neg_s)?;
        sum = ar.add(&sum, &term);
    }

    let x = ar.add(a, &ar.from_u64(n_shift));
    let x_neg_s = ar.powf(&x, &neg_s)?;
    let s_minus_1 = ar.sub(s, &one);
    let integral = ar.div(&ar.mul(&x, &x_neg_s), &s_minus_1)?;
    let half = ar.from_f64(0.5);
    let endpoint = ar.mul(&half, &x_neg_s);
    sum = ar.add(&sum, &integral);
    sum = ar.add(&sum, &endpoint);

    let target = ar.ten_pow_neg(digits + 4);
    let x_sq = ar.square(&x);
    let mut bern = ScaledBernoulli::new();
    // rising = s(s+1)…(s+2k-2), power = X^{-s-2k+1}
    let mut rising = s.clone();
    let mut power = ar.div(&x_neg_s, &x)?;
    let mut prev_mag: Option<Interval> = None;
    for k in 1..=MAX_CORRECTIONS {
        let b = bern.get(2 * k);
        let coeff = ar.from_ratio(b.numer(), b.denom());
        let term = ar.mul(&ar.mul(&coeff, &rising), &power);
        let mag = Interval::point(term.mag());
        if mag.certainly_le(&target) {
            return Ok(ar.add_error(&sum, &term));
        }
        if let Some(p) = &prev_mag {
            if mag.certainly_gt(p) {
                return Err(SpecfunError::Shortfall(format!(
                    "Euler–Maclaurin corrections started growing at k = {k}"
                )));
            }
        }
        prev_mag = Some(mag);
        sum = ar.add(&sum, &term);
        let two_k = ar.from_u64(2 * k as u64);
        let f1 = ar.add(s, &ar.sub(&two_k, &one));
        let f2 = ar.add(s, &two_k);
        rising = ar.mul(&rising, &ar.mul(&f1, &f2));
        power = ar.div(&power, &x_sq)?;
    }
    Err(SpecfunError::Shortfall(format!(
        "no convergence after {MAX_CORRECTIONS} Euler–Maclaurin corrections"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_zeta(s: f64, a: f64, n: usize) -> (f64, f64) {
        // partial sum plus tail bracket [∫_{N}^{∞}, ∫_{N-1}^{∞}] of (t+a)^{-s}
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for k in (0..n).rev() {
            let y = (k as f64 + a).powf(-s) - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let nn = n as f64 + a;
        let lo = acc + nn.powf(1.0 - s) / (s - 1.0);
        let hi = acc + (nn - 1.0).powf(1.0 - s) / (s - 1.0);
        (lo, hi)
    }

    #[test]
    fn zeta_two_contains_pi_squared_over_six() {
        let z = riemann_zeta(2.0, 30).unwrap();
        assert!(z.meets_width_contract());
        let mut ar = Arith::with_digits(40);
        let pi = ar.pi();
        let pi2 = ar.square(&pi);
        let exact = ar.div(&pi2, &ar.from_u64(6)).unwrap();
        assert!(z.interval().overlaps(&exact));
        assert!(z.contains_decimal("1.644934066848226436472415166646025189219"));
    }

    #[test]
    fn zeta_four_contains_pi_fourth_over_ninety() {
        let z = riemann_zeta(4.0, 30).unwrap();
        let mut ar = Arith::with_digits(40);
        let pi = ar.pi();
        let pi4 = ar.square(&ar.square(&pi));
        let exact = ar.div(&pi4, &ar.from_u64(90)).unwrap();
        assert!(exact.subset_of(z.interval()) || z.interval().overlaps(&exact));
        assert!(z.hi_f64() - z.lo_f64() < 1e-15);
    }

    #[test]
    fn zeta_three_halves_against_brute_force() {
        // 10^7 terms; tail bracket width ≈ 1.5e-11
        let (lo, hi) = brute_force_zeta(1.5, 1.0, 10_000_000);
        let z = riemann_zeta(1.5, 30).unwrap();
        let mid = z.mid_f64();
        assert!(lo - 1e-9 <= mid && mid <= hi + 1e-9, "{lo} {mid} {hi}");
        assert!(z.contains_decimal("2.612375348685488343348567567924071630571"));
    }

    #[test]
    fn hurwitz_at_one_is_riemann() {
        let h = hurwitz_zeta(2.0, 1.0, 25).unwrap();
        let z = riemann_zeta(2.0, 25).unwrap();
        assert!(h.interval().overlaps(z.interval()));
    }

    #[test]
    fn hurwitz_at_silver_ratio_below_052() {
        let mut ar = Arith::with_digits(30);
        let two = ar.from_u64(2);
        let root = ar.sqrt(&two).unwrap();
        let a = ar.add(&root, &ar.from_u64(1));
        let iv = hurwitz_zeta_interval(&mut ar, &two, &a, 30).unwrap();
        let h = Enclosure::new(iv, 30);
        assert!(h.hi_f64() <= 0.52);
        assert!(h.contains_decimal("0.5114791294395424054028105339511174664407"));
        // 10^6-term brute force
        let (lo, hi) = brute_force_zeta(2.0, std::f64::consts::SQRT_2 + 1.0, 1_000_000);
        assert!(lo - 1e-9 <= h.mid_f64() && h.mid_f64() <= hi + 1e-9);
    }

    #[test]
    fn hurwitz_shift_two_is_zeta_minus_one() {
        let h = hurwitz_zeta(2.0, 2.0, 30).unwrap();
        assert!(h.contains_decimal("0.644934066848226436472415166646025189219"));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(riemann_zeta(1.0, 20), Err(SpecfunError::SeriesDiverges(_))));
        assert!(matches!(
            hurwitz_zeta(2.0, 0.0, 20),
            Err(SpecfunError::NonPositiveShift(_))
        ));
        assert!(matches!(
            hurwitz_zeta(2.0, -1.0, 20),
            Err(SpecfunError::NonPositiveShift(_))
        ));
        assert!(matches!(riemann_zeta(2.0, 2), Err(SpecfunError::Precision { .. })));
    }

    #[test]
    fn shift_count_rule() {
        assert_eq!(shift_count(2.0, 30), 45);
        assert_eq!(shift_count(50.0, 30), 60);
        assert_eq!(shift_count(1.01, 15), 23);
    }
}

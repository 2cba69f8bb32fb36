//! Outward-rounded interval arithmetic over `astro_float::BigFloat`.
//!
//! Every operation rounds the lower endpoint toward −∞ and the upper endpoint
//! toward +∞. Transcendental results are additionally pushed out by a few
//! units in the last place, so the enclosure holds even if the backend's
//! rounding is merely faithful.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SpecfunError;

/// Guard bits added on top of the requested decimal digits.
pub const GUARD_BITS: usize = 64;

/// Binary precision (bits) needed to carry `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    let raw = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
    raw.div_ceil(64) * 64
}

/// Precision context: working precision plus the constant cache astro-float
/// needs for π, e and logarithms. Not shared between threads; each computation
/// builds its own.
pub struct Arith {
    prec: usize,
    cc: Consts,
}

impl fmt::Debug for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arith").field("prec", &self.prec).finish()
    }
}

/// A closed interval `[lo, hi]` of big floats.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        Some(_) => Ordering::Greater,
        None => panic!("comparison with NaN in interval arithmetic"),
    }
}

fn min_of(vals: &[BigFloat]) -> BigFloat {
    let mut best = vals[0].clone();
    for v in &vals[1..] {
        if cmp(v, &best) == Ordering::Less {
            best = v.clone();
        }
    }
    best
}

fn max_of(vals: &[BigFloat]) -> BigFloat {
    let mut best = vals[0].clone();
    for v in &vals[1..] {
        if cmp(v, &best) == Ordering::Greater {
            best = v.clone();
        }
    }
    best
}

fn is_finite(x: &BigFloat) -> bool {
    !x.is_nan() && !x.is_inf()
}

impl Interval {
    pub fn point(x: BigFloat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// Builds `[lo, hi]`; panics if the endpoints are out of order.
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        assert!(cmp(&lo, &hi) != Ordering::Greater, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn is_finite(&self) -> bool {
        is_finite(&self.lo) && is_finite(&self.hi)
    }

    pub fn is_point(&self) -> bool {
        cmp(&self.lo, &self.hi) == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !(self.is_positive() || (self.hi.is_negative() && !self.hi.is_zero()))
    }

    /// True when every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        cmp(&self.hi, &other.lo) == Ordering::Less
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        cmp(&self.hi, &other.lo) != Ordering::Greater
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        other.certainly_lt(self)
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        cmp(&other.lo, &self.lo) != Ordering::Greater && cmp(&self.hi, &other.hi) != Ordering::Greater
    }

    /// `self` lies strictly inside the open interval `(other.lo, other.hi)`.
    pub fn strictly_inside(&self, other: &Interval) -> bool {
        cmp(&other.lo, &self.lo) == Ordering::Less && cmp(&self.hi, &other.hi) == Ordering::Less
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        cmp(&self.lo, &other.hi) != Ordering::Greater && cmp(&other.lo, &self.hi) != Ordering::Greater
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigFloat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if cmp(&a, &b) == Ordering::Greater {
            a
        } else {
            b
        }
    }

    /// Nearest `f64` to the lower endpoint, stepped one ulp down.
    pub fn lo_f64(&self) -> f64 {
        to_f64_nearest(&self.lo).next_down()
    }

    /// Nearest `f64` to the upper endpoint, stepped one ulp up.
    pub fn hi_f64(&self) -> f64 {
        to_f64_nearest(&self.hi).next_up()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (to_f64_nearest(&self.lo) + to_f64_nearest(&self.hi))
    }
}

/// Exact value of a finite big float as `(mantissa, binary exponent)`.
fn to_scaled_integer(x: &BigFloat) -> (BigInt, i64) {
    if x.is_zero() {
        return (BigInt::zero(), 0);
    }
    let (words, nbits, sign, exp, _) = x.as_raw_parts().expect("finite big float has raw parts");
    let mut mag = BigUint::zero();
    for w in words.iter().rev() {
        mag = (mag << 64u32) + BigUint::from(*w);
    }
    let m = BigInt::from(mag);
    let m = if sign == Sign::Neg { -m } else { m };
    (m, i64::from(exp) - nbits as i64)
}

fn to_f64_nearest(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let mut y = x.clone();
    if y.set_precision(64, RoundingMode::ToEven).is_err() {
        return f64::NAN;
    }
    let (words, nbits, sign, exp, _) = y.as_raw_parts().expect("finite big float has raw parts");
    // value = 0.w × 2^exp, top word holds the leading bits
    let top = *words.last().expect("nonempty mantissa");
    let v = ldexp(top as f64, i64::from(exp) - 64 - (nbits as i64 - 64));
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

fn to_sci_string(x: &BigFloat) -> String {
    let mut cc = Consts::new().expect("constant cache");
    x.format(Radix::Dec, RoundingMode::ToEven, &mut cc)
        .expect("decimal formatting")
}

/// Exact directed rounding of `x` to a decimal string with `frac_digits`
/// digits after the point. `up` selects ceiling, otherwise floor.
pub fn to_fixed_decimal(x: &BigFloat, frac_digits: usize, up: bool) -> String {
    if x.is_inf_pos() {
        return "inf".to_string();
    }
    if x.is_inf_neg() {
        return "-inf".to_string();
    }
    let (m, e2) = to_scaled_integer(x);
    let ten_k = BigInt::from(10u32).pow(frac_digits as u32);
    // value * 10^k = m * 2^e2 * 10^k
    let q = if e2 >= 0 {
        (m << (e2 as usize)) * &ten_k
    } else {
        let num = m * &ten_k;
        let den = BigInt::one() << ((-e2) as usize);
        if up {
            num.div_ceil(&den)
        } else {
            num.div_floor(&den)
        }
    };
    let neg = q.is_negative();
    let digits = q.abs().to_string();
    let digits = if digits.len() <= frac_digits {
        format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - frac_digits);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int_part);
    if frac_digits > 0 {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_sci_string(&self.lo), to_sci_string(&self.hi))
    }
}

impl Arith {
    pub fn new(prec: usize) -> Self {
        Arith {
            prec,
            cc: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn with_digits(digits: u32) -> Self {
        Self::new(bits_for_digits(digits))
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn from_f64(&self, x: f64) -> Interval {
        // exact: every f64 fits in the working precision
        Interval::point(BigFloat::from_f64(x, self.prec.max(64)))
    }

    pub fn from_u64(&self, n: u64) -> Interval {
        Interval::point(BigFloat::from_u64(n, self.prec.max(64)))
    }

    pub fn from_i64(&self, n: i64) -> Interval {
        Interval::point(BigFloat::from_i64(n, self.prec.max(64)))
    }

    /// Encloses a decimal literal such as `"1.4338677391"` or `"2.5e-3"`.
    pub fn from_decimal(&mut self, text: &str) -> Result<Interval, SpecfunError> {
        let lo = BigFloat::parse(text, Radix::Dec, self.prec, RoundingMode::Down, &mut self.cc);
        let hi = BigFloat::parse(text, Radix::Dec, self.prec, RoundingMode::Up, &mut self.cc);
        if lo.is_nan() || hi.is_nan() {
            return Err(SpecfunError::BadLiteral(text.to_string()));
        }
        Ok(Interval::new(lo, hi))
    }

    /// Encloses `num / den` for big integers.
    pub fn from_ratio(&mut self, num: &BigInt, den: &BigInt) -> Interval {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        self.div(&n, &d).expect("nonzero denominator")
    }

    pub fn from_bigint(&mut self, n: &BigInt) -> Interval {
        let text = n.to_string();
        self.from_decimal(&text).expect("integer literal")
    }

    pub fn pi(&mut self) -> Interval {
        let lo = self.cc.pi(self.prec, RoundingMode::Down);
        let hi = self.cc.pi(self.prec, RoundingMode::Up);
        self.widen(Interval::new(lo, hi))
    }

    pub fn ln10(&mut self) -> Interval {
        let lo = self.cc.ln_10(self.prec, RoundingMode::Down);
        let hi = self.cc.ln_10(self.prec, RoundingMode::Up);
        self.widen(Interval::new(lo, hi))
    }

    pub fn ln2(&mut self) -> Interval {
        let lo = self.cc.ln_2(self.prec, RoundingMode::Down);
        let hi = self.cc.ln_2(self.prec, RoundingMode::Up);
        self.widen(Interval::new(lo, hi))
    }

    /// `2^k` exactly.
    pub fn pow2(&self, k: i32) -> Interval {
        let mut x = BigFloat::from_u64(1, 64);
        // 1 = 0.1b * 2^1
        x.set_exponent(k + 1);
        Interval::point(x)
    }

    /// Pushes both endpoints outward by `4 · 2^-prec` relative.
    fn widen(&self, x: Interval) -> Interval {
        let lo = self.nudge(&x.lo, false);
        let hi = self.nudge(&x.hi, true);
        Interval { lo, hi }
    }

    fn nudge(&self, v: &BigFloat, up: bool) -> BigFloat {
        if v.is_zero() || !is_finite(v) {
            return v.clone();
        }
        let e = v.exponent().expect("finite");
        let mut eps = BigFloat::from_u64(1, 64);
        eps.set_exponent(e - self.prec as i32 + 3);
        if up {
            v.add(&eps, self.prec, RoundingMode::Up)
        } else {
            v.sub(&eps, self.prec, RoundingMode::Down)
        }
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.add(&b.lo, self.prec, RoundingMode::Down),
            hi: a.hi.add(&b.hi, self.prec, RoundingMode::Up),
        }
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.sub(&b.hi, self.prec, RoundingMode::Down),
            hi: a.hi.sub(&b.lo, self.prec, RoundingMode::Up),
        }
    }

    pub fn neg(&self, a: &Interval) -> Interval {
        Interval {
            lo: a.hi.neg(),
            hi: a.lo.neg(),
        }
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let p = self.prec;
        let lows = [
            a.lo.mul(&b.lo, p, RoundingMode::Down),
            a.lo.mul(&b.hi, p, RoundingMode::Down),
            a.hi.mul(&b.lo, p, RoundingMode::Down),
            a.hi.mul(&b.hi, p, RoundingMode::Down),
        ];
        let highs = [
            a.lo.mul(&b.lo, p, RoundingMode::Up),
            a.lo.mul(&b.hi, p, RoundingMode::Up),
            a.hi.mul(&b.lo, p, RoundingMode::Up),
            a.hi.mul(&b.hi, p, RoundingMode::Up),
        ];
        Interval {
            lo: min_of(&lows),
            hi: max_of(&highs),
        }
    }

    pub fn square(&self, a: &Interval) -> Interval {
        let p = self.prec;
        let alo = a.lo.abs();
        let ahi = a.hi.abs();
        let (small, big) = if cmp(&alo, &ahi) == Ordering::Greater {
            (ahi, alo)
        } else {
            (alo, ahi)
        };
        let hi = big.mul(&big, p, RoundingMode::Up);
        let lo = if a.contains_zero() {
            BigFloat::from_u64(0, 64)
        } else {
            small.mul(&small, p, RoundingMode::Down)
        };
        Interval { lo, hi }
    }

    pub fn div(&self, a: &Interval, b: &Interval) -> Result<Interval, SpecfunError> {
        if b.contains_zero() {
            return Err(SpecfunError::Domain("division by an interval containing zero"));
        }
        let p = self.prec;
        let lows = [
            a.lo.div(&b.lo, p, RoundingMode::Down),
            a.lo.div(&b.hi, p, RoundingMode::Down),
            a.hi.div(&b.lo, p, RoundingMode::Down),
            a.hi.div(&b.hi, p, RoundingMode::Down),
        ];
        let highs = [
            a.lo.div(&b.lo, p, RoundingMode::Up),
            a.lo.div(&b.hi, p, RoundingMode::Up),
            a.hi.div(&b.lo, p, RoundingMode::Up),
            a.hi.div(&b.hi, p, RoundingMode::Up),
        ];
        Ok(Interval {
            lo: min_of(&lows),
            hi: max_of(&highs),
        })
    }

    pub fn recip(&self, a: &Interval) -> Result<Interval, SpecfunError> {
        let one = self.from_u64(1);
        self.div(&one, a)
    }

    /// Evaluates a monotone increasing function at both endpoints. Point
    /// intervals need a single call; the widened result covers any error
    /// below a few ulps.
    fn monotone<F>(&mut self, a: &Interval, mut f: F) -> Interval
    where
        F: FnMut(&BigFloat, usize, RoundingMode, &mut Consts) -> BigFloat,
    {
        let p = self.prec;
        if a.is_point() {
            let v = f(&a.lo, p, RoundingMode::ToEven, &mut self.cc);
            return self.widen(Interval::point(v));
        }
        let lo = f(&a.lo, p, RoundingMode::Down, &mut self.cc);
        let hi = f(&a.hi, p, RoundingMode::Up, &mut self.cc);
        self.widen(Interval { lo, hi })
    }

    pub fn exp(&mut self, a: &Interval) -> Interval {
        let mut out = self.monotone(a, |x, p, rm, cc| x.exp(p, rm, cc));
        if out.lo.is_negative() {
            out.lo = BigFloat::from_u64(0, 64);
        }
        out
    }

    pub fn ln(&mut self, a: &Interval) -> Result<Interval, SpecfunError> {
        if !a.is_positive() {
            return Err(SpecfunError::Domain("logarithm of a nonpositive value"));
        }
        Ok(self.monotone(a, |x, p, rm, cc| x.ln(p, rm, cc)))
    }

    pub fn sqrt(&mut self, a: &Interval) -> Result<Interval, SpecfunError> {
        if a.lo.is_negative() && !a.lo.is_zero() {
            return Err(SpecfunError::Domain("square root of a negative value"));
        }
        let lo = a.lo.sqrt(self.prec, RoundingMode::Down);
        let hi = a.hi.sqrt(self.prec, RoundingMode::Up);
        let mut out = self.widen(Interval { lo, hi });
        if out.lo.is_negative() {
            out.lo = BigFloat::from_u64(0, 64);
        }
        Ok(out)
    }

    /// `x^n` for a machine integer exponent, valid for any sign of `x`.
    pub fn powi(&self, x: &Interval, n: i64) -> Result<Interval, SpecfunError> {
        let mut result = self.from_u64(1);
        let mut base = x.clone();
        let mut k = n.unsigned_abs();
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first { base.clone() } else { self.mul(&result, &base) };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = self.square(&base);
            }
        }
        if n < 0 {
            self.recip(&result)
        } else {
            Ok(result)
        }
    }

    /// `x^y` for `x > 0`, through `exp(y ln x)`.
    pub fn powf(&mut self, x: &Interval, y: &Interval) -> Result<Interval, SpecfunError> {
        let l = self.ln(x)?;
        let prod = self.mul(y, &l);
        Ok(self.exp(&prod))
    }

    /// General power. Integer and half-integer point exponents are done
    /// algebraically (integer ones also for nonpositive bases); everything
    /// else needs `x > 0` (or `x = 0`, `y > 0`).
    pub fn pow(&mut self, x: &Interval, y: &Interval) -> Result<Interval, SpecfunError> {
        if y.is_point() {
            let yf = to_f64_nearest(&y.lo);
            if y.lo.is_int() && yf.abs() <= 1.0e6 {
                return self.powi(x, yf as i64);
            }
            let twice = 2.0 * yf;
            if twice.fract() == 0.0 && twice.abs() <= 1.0e6 && BigFloat::from_f64(yf, 64).cmp(&y.lo) == Some(0) {
                let root = self.sqrt(x)?;
                return self.powi(&root, twice as i64);
            }
        }
        if x.is_positive() {
            return self.powf(x, y);
        }
        if x.is_point() && x.lo.is_zero() && y.is_positive() {
            return Ok(self.from_u64(0));
        }
        Err(SpecfunError::Domain("non-integer power of a nonpositive value"))
    }

    /// Convex hull of two intervals.
    pub fn hull(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: min_of(&[a.lo.clone(), b.lo.clone()]),
            hi: max_of(&[a.hi.clone(), b.hi.clone()]),
        }
    }

    /// Width `hi − lo`, rounded up.
    pub fn width(&self, a: &Interval) -> BigFloat {
        a.hi.sub(&a.lo, self.prec, RoundingMode::Up)
    }

    /// Extends `a` by `[0, bound]` where `bound ≥ 0` is itself an interval.
    pub fn add_nonneg_bracket(&self, a: &Interval, bound: &Interval) -> Interval {
        Interval {
            lo: a.lo.clone(),
            hi: a.hi.add(&bound.hi, self.prec, RoundingMode::Up),
        }
    }

    /// Adds `[-m, m]` where `m = mag(err)`.
    pub fn add_error(&self, a: &Interval, err: &Interval) -> Interval {
        let m = err.mag();
        Interval {
            lo: a.lo.sub(&m, self.prec, RoundingMode::Down),
            hi: a.hi.add(&m, self.prec, RoundingMode::Up),
        }
    }

    /// Midpoint interval (a tight enclosure of the exact midpoint).
    pub fn midpoint(&self, a: &Interval) -> Interval {
        let half = BigFloat::from_f64(0.5, 64);
        let s_lo = a.lo.add(&a.hi, self.prec, RoundingMode::Down);
        let s_hi = a.hi.add(&a.lo, self.prec, RoundingMode::Up);
        Interval {
            lo: s_lo.mul(&half, self.prec, RoundingMode::Down),
            hi: s_hi.mul(&half, self.prec, RoundingMode::Up),
        }
    }

    /// Returns `10^-k` as an interval.
    pub fn ten_pow_neg(&mut self, k: u32) -> Interval {
        let text = format!("1e-{k}");
        self.from_decimal(&text).expect("power of ten")
    }
}

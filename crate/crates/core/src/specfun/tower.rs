//! The exponential tower a_0 = 1, a_1 = e, a_n = e^{a_{n-1}}, its reciprocal
//! sum S_e, and the doubling tower b_0 = 1, b_1 = 2, b_n = 2^{b_{n-1}} used to
//! bound the tail.
//!
//! a_4 = e^{a_3} ≈ 10^{1656520} is never formed; its reciprocal enters only
//! through a certified upper bound on log₁₀(1/a_4).

use std::cmp::Ordering;

use super::{check_digits, Arith, Enclosure, Interval, SpecfunError};

/// Size of a tower term a_n, stored at the first level where it fits in an f64.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TowerMagnitude {
    /// a_n itself.
    Value(f64),
    /// ln a_n.
    Log(f64),
    /// `depth`-fold iterated natural log of a_n equals `value`.
    IteratedLog { depth: u32, value: f64 },
}

impl TowerMagnitude {
    fn depth(&self) -> u32 {
        match self {
            TowerMagnitude::Value(_) => 0,
            TowerMagnitude::Log(_) => 1,
            TowerMagnitude::IteratedLog { depth, .. } => *depth,
        }
    }

    fn level_value(&self) -> f64 {
        match self {
            TowerMagnitude::Value(v) | TowerMagnitude::Log(v) => *v,
            TowerMagnitude::IteratedLog { value, .. } => *value,
        }
    }

    /// Orders magnitudes whose level values are all ≥ 1.
    pub fn compare(&self, other: &TowerMagnitude) -> Ordering {
        match self.depth().cmp(&other.depth()) {
            Ordering::Equal => self
                .level_value()
                .partial_cmp(&other.level_value())
                .unwrap_or(Ordering::Equal),
            o => o,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TowerTerm {
    pub n: u32,
    pub magnitude: TowerMagnitude,
    /// log₁₀(1/a_n); −∞ once it leaves the f64 range (n ≥ 5).
    pub reciprocal_log10: f64,
}

/// Terms a_0..=a_{n_max} of the exponential tower.
pub fn tower_terms(n_max: u32) -> Vec<TowerTerm> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut a = 1.0f64;
    let a3 = {
        let mut v = 1.0f64;
        for _ in 0..3 {
            v = v.exp();
        }
        v
    };
    for n in 0..=n_max {
        let term = match n {
            0..=3 => {
                if n > 0 {
                    a = a.exp();
                }
                TowerTerm {
                    n,
                    magnitude: TowerMagnitude::Value(a),
                    reciprocal_log10: -a.log10(),
                }
            }
            4 => TowerTerm {
                n,
                magnitude: TowerMagnitude::Log(a3),
                reciprocal_log10: -a3 / std::f64::consts::LN_10,
            },
            _ => TowerTerm {
                n,
                magnitude: TowerMagnitude::IteratedLog {
                    depth: n - 3,
                    value: a3,
                },
                reciprocal_log10: f64::NEG_INFINITY,
            },
        };
        out.push(term);
    }
    out
}

/// A term of the doubling tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublingTerm {
    Exact(u64),
    /// b_n = 2^k.
    PowerOfTwo(u64),
    /// b_n = 2^{2^{…}} with `height` exponentiations above 2^65536.
    Tower {
        height: u32,
    },
}

/// b_n: 1, 2, 4, 16, 65536, 2^65536, …
pub fn doubling_term(n: u32) -> DoublingTerm {
    match n {
        0 => DoublingTerm::Exact(1),
        1 => DoublingTerm::Exact(2),
        2 => DoublingTerm::Exact(4),
        3 => DoublingTerm::Exact(16),
        4 => DoublingTerm::Exact(65_536),
        5 => DoublingTerm::PowerOfTwo(65_536),
        _ => DoublingTerm::Tower { height: n - 5 },
    }
}

/// log₁₀ of the tail bound Σ_{n ≥ n_start} 1/b_n < γ(2)/b_{n_start} = 2/b_{n_start}.
///
/// The bound holds because b_{n+1} = 2^{b_n} ≥ 2 b_n. The returned value is
/// a certified upper bound on log₁₀(2/b_{n_start}); for `n_start ≥ 6` it lies
/// below the f64 range and −∞ is returned.
pub fn tower_tail_bound(n_start: u32) -> f64 {
    assert!(n_start >= 2, "tail bound needs n_start ≥ 2");
    // log₂ b_n = b_{n-1}
    let log2_b = match doubling_term(n_start - 1) {
        DoublingTerm::Exact(v) => v,
        _ => return f64::NEG_INFINITY,
    };
    let mut ar = Arith::new(128);
    let log10_2 = {
        let l2 = ar.ln2();
        let l10 = ar.ln10();
        ar.div(&l2, &l10).expect("ln 10 > 0")
    };
    let exponent = ar.from_i64(1 - log2_b as i64);
    ar.mul(&exponent, &log10_2).hi_f64()
}

/// Certified check that a_n > b_n, comparing logarithms where a_n is huge.
pub fn tower_dominates_doubling(n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let mut ar = Arith::new(128);
    let mut a = ar.from_u64(1);
    for _ in 0..n.min(3) {
        a = ar.exp(&a);
    }
    match (n, doubling_term(n)) {
        (1..=3, DoublingTerm::Exact(b)) => a.certainly_gt(&ar.from_u64(b)),
        (4, DoublingTerm::Exact(b)) => {
            // ln a_4 = a_3 against ln b_4
            let ln_b = ar.ln(&ar.from_u64(b)).expect("b > 0");
            a.certainly_gt(&ln_b)
        }
        _ => {
            // a_n > b_n follows inductively from a_{n-1} > b_{n-1} and e > 2
            tower_dominates_doubling(n - 1)
        }
    }
}

/// S_e and its five-term truncation S_e(4).
#[derive(Clone, Debug)]
pub struct TowerConstant {
    pub se: Enclosure,
    pub se4: Enclosure,
    /// Partial sums Σ_{n≤k} 1/a_n for k = 0..=3.
    pub partial_sums: Vec<Enclosure>,
    /// 1/a_n for n = 0..=3.
    pub reciprocals: Vec<Enclosure>,
    /// Certified upper bound on log₁₀(1/a_4).
    pub a4_reciprocal_log10: f64,
    /// Certified upper bound on log₁₀(S_e − S_e(4)).
    pub tail_log10: f64,
}

/// Largest supported digits for [`tower_constant_se`].
pub const TOWER_MAX_DIGITS: u32 = 50;

/// S_e = Σ_{n≥0} 1/a_n with S_e(4) = Σ_{n≤4} 1/a_n.
pub fn tower_constant_se(digits: u32) -> Result<TowerConstant, SpecfunError> {
    check_digits(digits)?;
    if digits > TOWER_MAX_DIGITS {
        return Err(SpecfunError::Precision {
            digits,
            min: super::MIN_DIGITS,
            max: TOWER_MAX_DIGITS,
        });
    }
    let mut ar = Arith::with_digits(digits);
    let prec = ar.prec() as i32;

    let mut a = ar.from_u64(1);
    let mut reciprocals = vec![ar.from_u64(1)];
    for _ in 1..=3 {
        // 1/a_n = e^{-a_{n-1}}
        let r = ar.exp(&ar.neg(&a));
        reciprocals.push(r);
        a = ar.exp(&a);
    }
    let a3 = a;

    let mut partial_sums = Vec::with_capacity(4);
    let mut sum = ar.from_u64(0);
    for r in &reciprocals {
        sum = ar.add(&sum, r);
        partial_sums.push(sum.clone());
    }

    // log₁₀(1/a_4) = −a_3 / ln 10, bounded above
    let l10 = ar.ln10();
    let a4_log10 = ar.div(&ar.neg(&a3), &l10)?;
    let a4_reciprocal_log10 = a4_log10.hi_f64();
    // 1/a_4 ≤ 2^{-(prec+16)} as long as its log₁₀ is below that exponent
    let cut = -(f64::from(prec + 16)) * std::f64::consts::LOG10_2;
    if !(a4_reciprocal_log10 < cut) {
        return Err(SpecfunError::Shortfall(
            "1/a_4 bracket exceeds working precision".into(),
        ));
    }
    let a4_bracket = ar.pow2(-(prec + 16));
    let se4 = ar.add_nonneg_bracket(&sum, &a4_bracket);

    // S_e − S_e(4) < Σ_{n≥5} 1/b_n < 2/b_5 = 2^{-65535}
    let tail_log10 = tower_tail_bound(5);
    let tail_bracket = ar.pow2(-65_535);
    let se = ar.add_nonneg_bracket(&se4, &tail_bracket);

    Ok(TowerConstant {
        se: Enclosure::new(se, digits),
        se4: Enclosure::new(se4, digits),
        partial_sums: partial_sums.into_iter().map(|iv| Enclosure::new(iv, digits)).collect(),
        reciprocals: reciprocals.into_iter().map(|iv| Enclosure::new(iv, digits)).collect(),
        a4_reciprocal_log10,
        tail_log10,
    })
}

/// Σ_{n≥0} 1/c_n for the tower c_0 = e^{t0}, c_n = e^{c_{n-1}}.
///
/// With t0 = 0 this is S_e. Terms are summed while they matter at the working
/// precision; once c_k exceeds `(prec + 16)·ln 2` the remainder is below
/// 2·e^{-c_k} ≤ 2^{-(prec+15)} (using e^x ≥ 2x) and is added as a bracket.
pub fn tower_sum_from(t0: &Interval, digits: u32) -> Result<Enclosure, SpecfunError> {
    check_digits(digits)?;
    let mut ar = Arith::with_digits(digits);
    let zero = ar.from_u64(0);
    if !zero.certainly_le(t0) {
        return Err(SpecfunError::Domain("tower start must be nonnegative"));
    }
    let prec = ar.prec() as i32;
    let ln2 = ar.ln2();
    let cutoff = ar.mul(&ar.from_u64((prec + 16) as u64), &ln2);
    let mut c = ar.exp(t0);
    let mut sum = ar.from_u64(0);
    for _ in 0..64 {
        let r = ar.recip(&c)?;
        sum = ar.add(&sum, &r);
        if c.certainly_gt(&cutoff) {
            let bracket = ar.pow2(-(prec + 15));
            return Ok(Enclosure::new(ar.add_nonneg_bracket(&sum, &bracket), digits));
        }
        c = ar.exp(&c);
    }
    Err(SpecfunError::Shortfall("tower sum did not terminate".into()))
}

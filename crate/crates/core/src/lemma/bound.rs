//! Theoretical measure bounds and the per-step chain values of the cover.
//!
//! Starting from τ = T(r0) ≥ floor, step j of the cover is at most
//!   Borel        1/(s^{j-1} ln τ)        sum γ(s)/ln τ
//!   Hayman       1/(s^{j-1} τ)           sum γ(s)/τ
//!   Nevanlinna   (τ + j − 1)^{-s}        sum ζ(s, τ)
//!   HanLiu       (τ^{1/s} + j − 1)^{-s}  sum ζ(s, τ^{1/s})
//!   FA           1/exp(u_j), u_1 = τ, u_{j+1} = e^{u_j}
//! At τ = floor these are the classical chains 1/s^{j-1}, 1/j^s, 1/a_{j-1}.

use super::{LemmaError, VariantKind, VariantSpec};
use crate::specfun::{
    check_digits, gamma_series_interval, hurwitz_zeta_interval, tower_constant_se, tower_sum_from, Arith, Enclosure,
};

/// Chain value for step `j ≥ 1` from start value `tau`.
pub fn chain_bound(v: &VariantSpec, tau: f64, j: usize) -> f64 {
    assert!(j >= 1, "steps are numbered from 1");
    let k = (j - 1) as f64;
    match v.kind {
        VariantKind::Borel => 1.0 / (v.s.powf(k) * tau.ln()),
        VariantKind::Hayman => 1.0 / (v.s.powf(k) * tau),
        VariantKind::Nevanlinna => (tau + k).powf(-v.s),
        VariantKind::HanLiu => (tau.powf(1.0 / v.s) + k).powf(-v.s),
        VariantKind::FernandezArias => {
            let mut u = tau;
            for _ in 1..j {
                u = u.exp();
            }
            (-u).exp()
        }
    }
}

/// The first `n` chain values.
pub fn chain_bounds(v: &VariantSpec, tau: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|j| chain_bound(v, tau, j)).collect()
}

/// Certified bound on the measure of the exceptional set: γ(s), ζ(s) or S_e,
/// or with `start_t = Some(τ)` the sum of the start-aware chain.
pub fn measure_bound(v: &VariantSpec, start_t: Option<f64>, digits: u32) -> Result<Enclosure, LemmaError> {
    check_digits(digits)?;
    if let Some(tau) = start_t {
        if !(tau >= v.floor()) || !tau.is_finite() {
            return Err(LemmaError::BelowFloor {
                t: tau,
                floor: v.floor(),
            });
        }
    }
    let mut ar = Arith::with_digits(digits);
    let s = ar.from_f64(v.s);
    let iv = match v.kind {
        VariantKind::Borel | VariantKind::Hayman => {
            let g = gamma_series_interval(&ar, &s)?;
            match start_t {
                None => g,
                Some(tau) => {
                    let t = ar.from_f64(tau);
                    let scale = if v.kind == VariantKind::Borel { ar.ln(&t)? } else { t };
                    ar.div(&g, &scale)?
                }
            }
        }
        VariantKind::Nevanlinna | VariantKind::HanLiu => {
            let a = match start_t {
                None => ar.from_u64(1),
                Some(tau) => {
                    let t = ar.from_f64(tau);
                    if v.kind == VariantKind::Nevanlinna {
                        t
                    } else {
                        let one = ar.from_u64(1);
                        let inv = ar.div(&one, &s)?;
                        ar.pow(&t, &inv)?
                    }
                }
            };
            hurwitz_zeta_interval(&mut ar, &s, &a, digits)?
        }
        VariantKind::FernandezArias => {
            return match start_t {
                None => Ok(tower_constant_se(digits)?.se),
                Some(tau) => {
                    let t = ar.from_f64(tau);
                    Ok(tower_sum_from(&t, digits)?)
                }
            };
        }
    };
    Ok(Enclosure::new(iv, digits))
}

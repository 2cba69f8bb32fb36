//! Exceptional sets of the growth lemmas.
//!
//! Each variant pairs a step `h(t)` with a threshold `φ(t)`; the exceptional
//! set is the closed set of `r ≥ r0` where `T(r + h(T(r))) ≥ φ(T(r))`.
//!
//! | variant     | h(t)     | φ(t)            | floor | measure bound |
//! |-------------|----------|-----------------|-------|---------------|
//! | Borel       | 1/ln t   | t^s             | e     | γ(s)          |
//! | Nevanlinna  | t^{-s}   | t + 1           | 1     | ζ(s)          |
//! | Hayman      | 1/t      | s t             | 1     | γ(s)          |
//! | HanLiu      | 1/t      | (t^{1/s} + 1)^s | 1     | ζ(s)          |
//! | FernandezArias | e^{-t} | e^t           | 0     | S_e           |

mod bound;
mod cover;
mod indicator;
mod scan;
mod set;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{EvalError, MonotoneReport};
use crate::specfun::SpecfunError;

pub use bound::{chain_bound, chain_bounds, measure_bound};
pub use cover::{build_cover, build_cover_from_scan, CoverSequence, CoverStep};
pub use indicator::violation_indicator;
pub use scan::{scan_violations, scan_violations_with, ScanOptions, ScanReport, DEFAULT_GRID, DEFAULT_TOL};
pub use set::{measure, IntervalSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantKind {
    Borel,
    Nevanlinna,
    Hayman,
    #[serde(rename = "hanliu")]
    HanLiu,
    FernandezArias,
}

impl VariantKind {
    pub const ALL: [VariantKind; 5] = [
        VariantKind::Borel,
        VariantKind::Nevanlinna,
        VariantKind::Hayman,
        VariantKind::HanLiu,
        VariantKind::FernandezArias,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariantKind::Borel => "borel",
            VariantKind::Nevanlinna => "nevanlinna",
            VariantKind::Hayman => "hayman",
            VariantKind::HanLiu => "hanliu",
            VariantKind::FernandezArias => "fernandez-arias",
        }
    }

    /// Minimum admissible value of T.
    pub fn floor(self) -> f64 {
        match self {
            VariantKind::Borel => std::f64::consts::E,
            VariantKind::Nevanlinna | VariantKind::Hayman | VariantKind::HanLiu => 1.0,
            VariantKind::FernandezArias => 0.0,
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariantKind {
    type Err = LemmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "borel" => Ok(VariantKind::Borel),
            "nevanlinna" => Ok(VariantKind::Nevanlinna),
            "hayman" => Ok(VariantKind::Hayman),
            "hanliu" => Ok(VariantKind::HanLiu),
            "fernandezarias" | "fa" => Ok(VariantKind::FernandezArias),
            _ => Err(LemmaError::UnknownVariant(s.to_string())),
        }
    }
}

/// A lemma variant with its parameter `s` (ignored by FernandezArias).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VariantSpec {
    pub kind: VariantKind,
    pub s: f64,
}

impl VariantSpec {
    pub fn new(kind: VariantKind, s: f64) -> Result<Self, LemmaError> {
        if kind != VariantKind::FernandezArias && !(s > 1.0 && s.is_finite()) {
            return Err(LemmaError::InvalidParameter(format!(
                "s = {s} must be a finite number above 1"
            )));
        }
        Ok(VariantSpec { kind, s })
    }

    pub fn borel(s: f64) -> Result<Self, LemmaError> {
        Self::new(VariantKind::Borel, s)
    }

    pub fn nevanlinna(s: f64) -> Result<Self, LemmaError> {
        Self::new(VariantKind::Nevanlinna, s)
    }

    pub fn hayman(s: f64) -> Result<Self, LemmaError> {
        Self::new(VariantKind::Hayman, s)
    }

    pub fn hanliu(s: f64) -> Result<Self, LemmaError> {
        Self::new(VariantKind::HanLiu, s)
    }

    pub fn fernandez_arias() -> Self {
        VariantSpec {
            kind: VariantKind::FernandezArias,
            s: f64::NAN,
        }
    }

    pub fn floor(&self) -> f64 {
        self.kind.floor()
    }

    fn check_floor(&self, t: f64) -> Result<(), LemmaError> {
        if t >= self.floor() {
            Ok(())
        } else {
            Err(LemmaError::BelowFloor { t, floor: self.floor() })
        }
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == VariantKind::FernandezArias {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}(s = {})", self.kind, self.s)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LemmaError {
    #[error("unknown variant {0:?} (expected borel, nevanlinna, hayman, hanliu or fernandez-arias)")]
    UnknownVariant(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("T = {t} is below the variant floor {floor}")]
    BelowFloor { t: f64, floor: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("T is not strictly increasing on [{}, {}]: first failure at r = {}", .0.r_lo, .0.r_hi, .0.first_violation.unwrap_or(f64::NAN))]
    NotMonotone(Box<MonotoneReport>),
    #[error("invalid arguments: {0}")]
    BadArguments(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// Step `h(t)`: 1/ln t, t^{-s}, 1/t, 1/t or e^{-t}.
pub fn step_size(v: &VariantSpec, t: f64) -> Result<f64, LemmaError> {
    v.check_floor(t)?;
    Ok(match v.kind {
        VariantKind::Borel => 1.0 / t.ln(),
        VariantKind::Nevanlinna => t.powf(-v.s),
        VariantKind::Hayman | VariantKind::HanLiu => 1.0 / t,
        VariantKind::FernandezArias => (-t).exp(),
    })
}

/// Threshold `φ(t)`: t^s, t + 1, s t, (t^{1/s} + 1)^s or e^t.
pub fn rhs_threshold(v: &VariantSpec, t: f64) -> Result<f64, LemmaError> {
    v.check_floor(t)?;
    Ok(match v.kind {
        VariantKind::Borel => t.powf(v.s),
        VariantKind::Nevanlinna => t + 1.0,
        VariantKind::Hayman => v.s * t,
        VariantKind::HanLiu => (t.powf(1.0 / v.s) + 1.0).powf(v.s),
        VariantKind::FernandezArias => t.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_examples() {
        assert_eq!(step_size(&VariantSpec::hayman(2.0).unwrap(), 1.0).unwrap(), 1.0);
        assert!((step_size(&VariantSpec::nevanlinna(2.0).unwrap(), 10.0).unwrap() - 0.01).abs() < 1e-17);
        assert_eq!(step_size(&VariantSpec::fernandez_arias(), 0.0).unwrap(), 1.0);
        assert!((step_size(&VariantSpec::borel(2.0).unwrap(), std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn threshold_examples() {
        let hl = VariantSpec::hanliu(2.0).unwrap();
        let v = rhs_threshold(&hl, 2.0).unwrap();
        assert!((v - (2f64.sqrt() + 1.0).powi(2)).abs() < 1e-12);
        assert_eq!(rhs_threshold(&VariantSpec::hayman(2.0).unwrap(), 2.0).unwrap(), 4.0);
        assert_eq!(rhs_threshold(&hl, 1.0).unwrap(), 4.0);
        assert_eq!(rhs_threshold(&VariantSpec::nevanlinna(3.0).unwrap(), 5.0).unwrap(), 6.0);
    }

    #[test]
    fn floors_enforced() {
        let b = VariantSpec::borel(2.0).unwrap();
        assert!(matches!(step_size(&b, 2.0), Err(LemmaError::BelowFloor { .. })));
        assert!(matches!(
            rhs_threshold(&VariantSpec::hayman(2.0).unwrap(), 0.5),
            Err(LemmaError::BelowFloor { .. })
        ));
        assert!(step_size(&VariantSpec::fernandez_arias(), -0.1).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(VariantSpec::hayman(1.0).is_err());
        assert!(VariantSpec::new(VariantKind::HanLiu, f64::NAN).is_err());
        assert!(VariantSpec::new(VariantKind::FernandezArias, 0.0).is_ok());
        assert_eq!("Han-Liu".parse::<VariantKind>().unwrap(), VariantKind::HanLiu);
        assert_eq!(
            "fernandez_arias".parse::<VariantKind>().unwrap(),
            VariantKind::FernandezArias
        );
        assert!("cartan".parse::<VariantKind>().is_err());
    }
}

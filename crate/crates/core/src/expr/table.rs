//! Tabulated growth functions through a Fritsch–Carlson monotone cubic
//! Hermite spline, and the power wrapper `T^σ`.

use super::{EvalError, EvalErrorKind, GrowthFunction};

#[derive(Clone, Debug)]
pub struct TabulatedGrowth {
    r: Vec<f64>,
    t: Vec<f64>,
    slopes: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TableError {
    #[error("need at least two points")]
    TooFewPoints,
    #[error("abscissae must be finite and strictly increasing (index {0})")]
    BadAbscissa(usize),
    #[error("values must be finite and nondecreasing (index {0})")]
    BadValue(usize),
}

impl TabulatedGrowth {
    pub fn new(points: &[(f64, f64)]) -> Result<Self, TableError> {
        if points.len() < 2 {
            return Err(TableError::TooFewPoints);
        }
        for (i, &(r, t)) in points.iter().enumerate() {
            if !r.is_finite() || (i > 0 && r <= points[i - 1].0) {
                return Err(TableError::BadAbscissa(i));
            }
            if !t.is_finite() || (i > 0 && t < points[i - 1].1) {
                return Err(TableError::BadValue(i));
            }
        }
        let r: Vec<f64> = points.iter().map(|p| p.0).collect();
        let t: Vec<f64> = points.iter().map(|p| p.1).collect();
        let n = r.len();
        let delta: Vec<f64> = (0..n - 1).map(|k| (t[k + 1] - t[k]) / (r[k + 1] - r[k])).collect();
        let mut m = vec![0.0; n];
        m[0] = delta[0];
        m[n - 1] = delta[n - 2];
        for k in 1..n - 1 {
            m[k] = if delta[k - 1] * delta[k] <= 0.0 {
                0.0
            } else {
                (delta[k - 1] + delta[k]) / 2.0
            };
        }
        for k in 0..n - 1 {
            if delta[k] == 0.0 {
                m[k] = 0.0;
                m[k + 1] = 0.0;
                continue;
            }
            let a = m[k] / delta[k];
            let b = m[k + 1] / delta[k];
            let s = a * a + b * b;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                m[k] = tau * a * delta[k];
                m[k + 1] = tau * b * delta[k];
            }
        }
        Ok(TabulatedGrowth { r, t, slopes: m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.r[0], *self.r.last().unwrap())
    }

    pub fn value(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.domain();
        if !(x >= lo && x <= hi) {
            return None;
        }
        let k = match self.r.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return Some(self.t[i]),
            Err(i) => i - 1,
        };
        let h = self.r[k + 1] - self.r[k];
        let u = (x - self.r[k]) / h;
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        Some(h00 * self.t[k] + h10 * h * self.slopes[k] + h01 * self.t[k + 1] + h11 * h * self.slopes[k + 1])
    }
}

impl GrowthFunction for TabulatedGrowth {
    fn eval_f64(&self, r: f64) -> Result<f64, EvalError> {
        self.value(r).ok_or(EvalError {
            kind: EvalErrorKind::OutsideTable,
            r,
        })
    }

    fn describe(&self) -> String {
        let (lo, hi) = self.domain();
        format!("monotone spline through {} points on [{lo}, {hi}]", self.r.len())
    }
}

/// `inner(r)^sigma`.
#[derive(Clone, Debug)]
pub struct Powered<G> {
    pub inner: G,
    pub sigma: f64,
}

impl<G: GrowthFunction> GrowthFunction for Powered<G> {
    fn eval_f64(&self, r: f64) -> Result<f64, EvalError> {
        let v = self.inner.eval_f64(r)?;
        if v < 0.0 {
            return Err(EvalError {
                kind: EvalErrorKind::NegativeBase,
                r,
            });
        }
        Ok(v.powf(self.sigma))
    }

    fn describe(&self) -> String {
        format!("({})^{}", self.inner.describe(), self.sigma)
    }
}

use super::{BinOp, Constant, EvalError, EvalErrorKind, Func, GrowthExpr, Node};
use crate::specfun::{bits_for_digits, interval, Arith, Interval};

pub(super) fn eval_f64(node: &Node, r: f64) -> Result<f64, EvalErrorKind> {
    let v = match node {
        Node::Num { value, .. } => *value,
        Node::Const(Constant::E) => std::f64::consts::E,
        Node::Const(Constant::Pi) => std::f64::consts::PI,
        Node::Var => r,
        Node::Neg(a) => -eval_f64(a, r)?,
        Node::Call(f, a) => {
            let x = eval_f64(a, r)?;
            match f {
                Func::Exp => x.exp(),
                Func::Log => {
                    if x <= 0.0 {
                        return Err(EvalErrorKind::LogNonPositive);
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(EvalErrorKind::SqrtNegative);
                    }
                    x.sqrt()
                }
            }
        }
        Node::Binary(op, a, b) => {
            let x = eval_f64(a, r)?;
            let y = eval_f64(b, r)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(EvalErrorKind::DivisionByZero);
                    }
                    x / y
                }
                BinOp::Pow => {
                    if x == 0.0 && y < 0.0 {
                        return Err(EvalErrorKind::DivisionByZero);
                    }
                    if x < 0.0 && y.fract() != 0.0 {
                        return Err(EvalErrorKind::NegativeBase);
                    }
                    x.powf(y)
                }
            }
        }
    };
    if v.is_nan() {
        return Err(EvalErrorKind::Indeterminate);
    }
    Ok(v)
}

fn strictly_negative(x: &Interval) -> bool {
    x.hi().is_negative() && !x.hi().is_zero()
}

fn point_zero(x: &Interval) -> bool {
    x.is_point() && x.lo().is_zero()
}

fn finite(x: Interval) -> Result<Interval, EvalErrorKind> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(EvalErrorKind::Unresolved)
    }
}

/// Interval evaluation. Definite domain violations are reported by kind;
/// intervals straddling a singularity, and exponent-range overflow, give
/// `Unresolved`.
pub(super) fn eval_interval(node: &Node, ar: &mut Arith, r: &Interval) -> Result<Interval, EvalErrorKind> {
    let v = match node {
        Node::Num { text, .. } => ar.from_decimal(text).map_err(|_| EvalErrorKind::Unresolved)?,
        Node::Const(Constant::E) => {
            let one = ar.from_u64(1);
            ar.exp(&one)
        }
        Node::Const(Constant::Pi) => ar.pi(),
        Node::Var => r.clone(),
        Node::Neg(a) => {
            let x = eval_interval(a, ar, r)?;
            ar.neg(&x)
        }
        Node::Call(f, a) => {
            let x = eval_interval(a, ar, r)?;
            match f {
                Func::Exp => ar.exp(&x),
                Func::Log => {
                    if !x.is_positive() {
                        return Err(if strictly_negative(&x) || point_zero(&x) {
                            EvalErrorKind::LogNonPositive
                        } else {
                            EvalErrorKind::Unresolved
                        });
                    }
                    ar.ln(&x).map_err(|_| EvalErrorKind::Unresolved)?
                }
                Func::Sqrt => {
                    if strictly_negative(&x) {
                        return Err(EvalErrorKind::SqrtNegative);
                    }
                    ar.sqrt(&x).map_err(|_| EvalErrorKind::Unresolved)?
                }
            }
        }
        Node::Binary(op, a, b) => {
            let x = eval_interval(a, ar, r)?;
            let y = eval_interval(b, ar, r)?;
            match op {
                BinOp::Add => ar.add(&x, &y),
                BinOp::Sub => ar.sub(&x, &y),
                BinOp::Mul => ar.mul(&x, &y),
                BinOp::Div => {
                    if point_zero(&y) {
                        return Err(EvalErrorKind::DivisionByZero);
                    }
                    ar.div(&x, &y).map_err(|_| EvalErrorKind::Unresolved)?
                }
                BinOp::Pow => {
                    let neg_exponent = strictly_negative(&y);
                    if point_zero(&x) && neg_exponent {
                        return Err(EvalErrorKind::DivisionByZero);
                    }
                    match ar.pow(&x, &y) {
                        Ok(v) => v,
                        Err(_) if strictly_negative(&x) && y.is_point() => return Err(EvalErrorKind::NegativeBase),
                        Err(_) => return Err(EvalErrorKind::Unresolved),
                    }
                }
            }
        }
    };
    finite(v)
}

/// Certified value rounded to a fixed number of significant digits.
#[derive(Clone, Debug)]
pub struct Approx {
    interval: Interval,
    digits: u32,
}

/// Result of [`GrowthExpr::eval`]. Overflow is reported symbolically.
#[derive(Clone, Debug)]
pub enum Value {
    Finite(Approx),
    PosInfinity,
    NegInfinity,
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Finite(a) => a.to_f64(),
            Value::PosInfinity => f64::INFINITY,
            Value::NegInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn to_decimal(&self) -> String {
        match self {
            Value::Finite(a) => a.to_decimal(),
            Value::PosInfinity => "+inf".into(),
            Value::NegInfinity => "-inf".into(),
        }
    }
}

impl Approx {
    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_f64(&self) -> f64 {
        self.interval.mid_f64()
    }

    /// Scientific notation `d.ddd…e±k` with `digits` significant digits,
    /// rounded half up from the enclosure midpoint.
    pub fn to_decimal(&self) -> String {
        let digits = self.digits as usize;
        let mut ar = Arith::new(self.interval.lo().precision().unwrap_or(128).max(128) + 64);
        let mid = ar.midpoint(&self.interval);
        let negative = mid.lo().is_negative() && !mid.lo().is_zero();
        let mag = if negative { ar.neg(&mid) } else { mid };
        if mag.lo().is_zero() {
            return format!("{}e0", zero_mantissa(digits));
        }
        let ln = ar.ln(&mag).expect("positive");
        let ln10 = ar.ln10();
        let log10 = ar.div(&ln, &ln10).expect("ln 10 > 0");
        let mut k = log10.mid_f64().floor() as i64;
        // scaled = mag · 10^(digits−1−k), to be rounded to an integer
        let mut scaled = scale_by_ten(&mut ar, &mag, digits as i64 - 1 - k);
        let lower = ar.from_f64(10f64.powi(digits as i32 - 1));
        if scaled.certainly_lt(&lower) {
            k -= 1;
            scaled = scale_by_ten(&mut ar, &mag, digits as i64 - 1 - k);
        }
        let half = ar.from_f64(0.5);
        let shifted = ar.add(&scaled, &half);
        let mut int = interval::to_fixed_decimal(shifted.lo(), 0, false);
        if int.len() > digits {
            // rounding carried into a new digit: 9.99… → 10.0…
            int.truncate(digits);
            k += 1;
        }
        let (head, tail) = int.split_at(1);
        let sign = if negative { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }
}

fn zero_mantissa(digits: usize) -> String {
    if digits <= 1 {
        "0".into()
    } else {
        format!("0.{}", "0".repeat(digits - 1))
    }
}

fn scale_by_ten(ar: &mut Arith, x: &Interval, k: i64) -> Interval {
    let ten = ar.from_u64(10);
    let p = ar.powi(&ten, k.abs()).expect("nonzero base");
    if k >= 0 {
        ar.mul(x, &p)
    } else {
        ar.div(x, &p).expect("nonzero power of ten")
    }
}

const MAX_RETRIES: u32 = 6;

pub(super) fn eval_digits(expr: &GrowthExpr, r: f64, digits: u32) -> Result<Value, EvalError> {
    let err = |kind| EvalError { kind, r };
    if !r.is_finite() {
        return Err(err(EvalErrorKind::NonFiniteArgument));
    }
    let digits = digits.max(1);
    let fast = eval_f64(&expr.root, r);
    let mut extra = 64usize;
    for _ in 0..MAX_RETRIES {
        let mut ar = Arith::new(bits_for_digits(digits + 2) + extra);
        let x = ar.from_f64(r);
        match eval_interval(&expr.root, &mut ar, &x) {
            Ok(v) => {
                if resolved(&mut ar, &v, digits) {
                    return Ok(Value::Finite(Approx { interval: v, digits }));
                }
            }
            Err(EvalErrorKind::Unresolved) => {
                // exponent-range overflow agrees with the machine result
                match fast {
                    Ok(f) if f == f64::INFINITY => return Ok(Value::PosInfinity),
                    Ok(f) if f == f64::NEG_INFINITY => return Ok(Value::NegInfinity),
                    _ => {}
                }
            }
            Err(kind) => return Err(err(kind)),
        }
        extra *= 2;
    }
    match fast {
        Err(kind) => Err(err(kind)),
        Ok(f) if f == f64::INFINITY => Ok(Value::PosInfinity),
        Ok(f) if f == f64::NEG_INFINITY => Ok(Value::NegInfinity),
        Ok(_) => Err(err(EvalErrorKind::Unresolved)),
    }
}

/// Relative width at most `10^-(digits+1)`, or absolute when the enclosure
/// straddles zero.
fn resolved(ar: &mut Arith, v: &Interval, digits: u32) -> bool {
    let w = Interval::point(ar.width(v));
    let tol = ar.ten_pow_neg(digits + 1);
    if v.contains_zero() {
        return w.certainly_le(&tol);
    }
    let m = Interval::point(v.mag());
    let scaled = ar.mul(&m, &tol);
    w.certainly_le(&scaled)
}

#[cfg(test)]
mod tests {
    use super::super::parse_growth;
    use super::*;

    #[test]
    fn example_values() {
        let t = parse_growth("exp(1.556*(r-1))").unwrap();
        assert_eq!(t.eval(1.0, 20).unwrap().to_decimal(), "1.0000000000000000000e0");
        let v = t.eval(2.1329, 20).unwrap().to_f64();
        assert!((v - (2f64.sqrt() + 1.0).powi(2)).abs() < 2e-3, "{v}");
        assert_eq!(
            parse_growth("r").unwrap().eval(7.0, 15).unwrap().to_decimal(),
            "7.00000000000000e0"
        );
    }

    #[test]
    fn crossing_point_matches_logarithm() {
        // e^{1.556 (r−1)} = 3 + 2√2 at r = 1 + 2 ln(1+√2)/1.556
        let r = 1.0 + 2.0 * (1.0 + 2f64.sqrt()).ln() / 1.556;
        let t = parse_growth("exp(1.556*(r-1))").unwrap();
        let v = t.eval(r, 20).unwrap().to_f64();
        assert!((v - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn decimal_rounding() {
        let t = parse_growth("pi").unwrap();
        assert_eq!(t.eval(0.0, 20).unwrap().to_decimal(), "3.1415926535897932385e0");
        let t = parse_growth("exp(r)").unwrap();
        assert_eq!(t.eval(-10.0, 15).unwrap().to_decimal(), "4.53999297624849e-5");
        assert_eq!(t.eval(100.0, 15).unwrap().to_decimal(), "2.68811714181614e43");
        let t = parse_growth("0 - 1/3").unwrap();
        assert_eq!(t.eval(0.0, 5).unwrap().to_decimal(), "-3.3333e-1");
        let t = parse_growth("9.99999").unwrap();
        assert_eq!(t.eval(0.0, 3).unwrap().to_decimal(), "1.00e1");
    }

    #[test]
    fn digits_agree_across_precisions() {
        let t = parse_growth("exp(exp(r)) / (1 + sqrt(r))").unwrap();
        let a = t.eval(1.3, 20).unwrap();
        let b = t.eval(1.3, 40).unwrap();
        let (Value::Finite(a), Value::Finite(b)) = (a, b) else {
            panic!()
        };
        assert_eq!(a.to_decimal()[..18], b.to_decimal()[..18]);
    }

    #[test]
    fn overflow_is_symbolic() {
        let t = parse_growth("exp(r)").unwrap();
        assert!(t.eval_f64(1000.0).unwrap().is_infinite());
        let big = parse_growth("exp(exp(exp(r)))").unwrap();
        assert!(matches!(big.eval(4.0, 20).unwrap(), Value::PosInfinity));
        // representable in the big-float exponent range even though f64 overflows
        assert!(t.eval(1000.0, 20).unwrap().is_finite());
    }

    #[test]
    fn domain_errors() {
        let kind = |s: &str, r: f64| parse_growth(s).unwrap().eval(r, 20).unwrap_err().kind;
        assert_eq!(kind("log(r)", 0.0), EvalErrorKind::LogNonPositive);
        assert_eq!(kind("log(r)", -1.0), EvalErrorKind::LogNonPositive);
        assert_eq!(kind("sqrt(r)", -1.0), EvalErrorKind::SqrtNegative);
        assert_eq!(kind("1/r", 0.0), EvalErrorKind::DivisionByZero);
        assert_eq!(kind("r^0.5", -2.0), EvalErrorKind::NegativeBase);
        assert_eq!(kind("r^-1", 0.0), EvalErrorKind::DivisionByZero);
        let e = parse_growth("log(r)").unwrap().eval_f64(-3.0).unwrap_err();
        assert_eq!(e.r, -3.0);
        assert_eq!(parse_growth("r^3").unwrap().eval(-2.0, 15).unwrap().to_f64(), -8.0);
    }
}

//! Growth functions T(r): a small expression language with a parser,
//! printer, machine-precision and certified evaluators, a grid monotonicity
//! check, and a tabulated monotone-spline alternative.
//!
//! `log` is the natural logarithm.

mod eval;
mod monotone;
mod parse;
mod table;

use std::fmt;

use thiserror::Error;

use crate::specfun::{Arith, Interval};

pub use eval::{Approx, Value};
pub use monotone::{validate_monotone, validate_monotone_fn, MonotoneReport, MONOTONE_TOLERANCE};
pub use table::{Powered, TableError, TabulatedGrowth};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    E,
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sqrt" => Some(Func::Sqrt),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => " * ",
            BinOp::Div => " / ",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

/// Expression tree node. Literals keep their source text so printing is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num { text: String, value: f64 },
    Const(Constant),
    Var,
    Call(Func, Box<Node>),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
}

impl Node {
    /// Literal node from a finite nonnegative machine number; the text is the
    /// shortest round-trip representation.
    pub fn number(value: f64) -> Node {
        assert!(
            value.is_finite() && value >= 0.0,
            "literal must be finite and nonnegative"
        );
        let text = format!("{value:?}");
        Node::Num { text, value }
    }

    fn precedence(&self) -> u8 {
        match self {
            Node::Binary(op, _, _) => op.precedence(),
            Node::Neg(_) => 3,
            _ => 5,
        }
    }

    fn has_var(&self) -> bool {
        match self {
            Node::Var => true,
            Node::Num { .. } | Node::Const(_) => false,
            Node::Call(_, a) | Node::Neg(a) => a.has_var(),
            Node::Binary(_, a, b) => a.has_var() || b.has_var(),
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, node: &Node, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({node})")
    } else {
        write!(f, "{node}")
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Num { text, .. } => f.write_str(text),
            Node::Const(Constant::E) => f.write_str("e"),
            Node::Const(Constant::Pi) => f.write_str("pi"),
            Node::Var => f.write_str("r"),
            Node::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            Node::Neg(inner) => {
                f.write_str("-")?;
                write_child(f, inner, inner.precedence() < 3)
            }
            Node::Binary(BinOp::Pow, base, exponent) => {
                write_child(f, base, base.precedence() <= 4)?;
                f.write_str("^")?;
                write_child(f, exponent, exponent.precedence() < 3)
            }
            Node::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                write_child(f, lhs, lhs.precedence() < p)?;
                f.write_str(op.symbol())?;
                write_child(f, rhs, rhs.precedence() <= p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("unknown identifier {name:?} at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("expression has more than one free variable ({}); only r is allowed", names.join(", "))]
    TooManyVariables { names: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("logarithm of a nonpositive value")]
    LogNonPositive,
    #[error("square root of a negative value")]
    SqrtNegative,
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-integer power of a negative value")]
    NegativeBase,
    #[error("indeterminate form")]
    Indeterminate,
    #[error("value could not be resolved at the available precision")]
    Unresolved,
    #[error("argument outside the tabulated range")]
    OutsideTable,
    #[error("argument is not finite")]
    NonFiniteArgument,
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
#[error("{kind} at r = {r}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub r: f64,
}

/// Parsed growth function with the single free variable `r`.
#[derive(Clone, Debug)]
pub struct GrowthExpr {
    root: Node,
}

impl PartialEq for GrowthExpr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl fmt::Display for GrowthExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for GrowthExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_growth(s)
    }
}

/// Parses `text` into a growth expression.
pub fn parse_growth(text: &str) -> Result<GrowthExpr, ParseError> {
    let parsed = parse::parse(text)?;
    if parsed.unknown.is_empty() {
        return Ok(GrowthExpr { root: parsed.root });
    }
    let mut names: Vec<String> = Vec::new();
    if parsed.uses_r {
        names.push("r".into());
    }
    for (n, _) in &parsed.unknown {
        if !names.contains(n) {
            names.push(n.clone());
        }
    }
    if names.len() >= 2 {
        return Err(ParseError::TooManyVariables { names });
    }
    let (name, offset) = parsed.unknown[0].clone();
    Err(ParseError::UnknownIdentifier { name, offset })
}

impl GrowthExpr {
    pub fn from_node(root: Node) -> Self {
        GrowthExpr { root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// False for constant expressions.
    pub fn has_variable(&self) -> bool {
        self.root.has_var()
    }

    /// `self^sigma`.
    pub fn powf(&self, sigma: f64) -> GrowthExpr {
        GrowthExpr {
            root: Node::Binary(BinOp::Pow, Box::new(self.root.clone()), Box::new(Node::number(sigma))),
        }
    }

    /// Machine-precision value; overflow gives `+∞`.
    pub fn eval_f64(&self, r: f64) -> Result<f64, EvalError> {
        if !r.is_finite() {
            return Err(EvalError {
                kind: EvalErrorKind::NonFiniteArgument,
                r,
            });
        }
        eval::eval_f64(&self.root, r).map_err(|kind| EvalError { kind, r })
    }

    /// Interval enclosure over the argument interval `r`.
    pub fn eval_interval(&self, ar: &mut Arith, r: &Interval) -> Result<Interval, EvalErrorKind> {
        eval::eval_interval(&self.root, ar, r)
    }

    /// Value at `r` correct to `digits` significant digits.
    pub fn eval(&self, r: f64, digits: u32) -> Result<Value, EvalError> {
        eval::eval_digits(self, r, digits)
    }
}

/// A continuous increasing function usable by the lemma engine.
pub trait GrowthFunction: Send + Sync {
    fn eval_f64(&self, r: f64) -> Result<f64, EvalError>;

    /// The expression form, when available, enables certified re-evaluation.
    fn expr(&self) -> Option<&GrowthExpr> {
        None
    }

    fn describe(&self) -> String;
}

impl GrowthFunction for GrowthExpr {
    fn eval_f64(&self, r: f64) -> Result<f64, EvalError> {
        GrowthExpr::eval_f64(self, r)
    }

    fn expr(&self) -> Option<&GrowthExpr> {
        Some(self)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `eval(expr, r, digits)`.
pub fn eval(expr: &GrowthExpr, r: f64, digits: u32) -> Result<Value, EvalError> {
    expr.eval(r, digits)
}

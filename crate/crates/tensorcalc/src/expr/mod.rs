//! Immutable symbolic expressions over coordinate symbols.
//!
//! Everything the engine manipulates — metric components, Christoffel symbols,
//! curvature tables, operator results — is an [`Expr`]. Expressions are plain
//! trees; equality of two expressions is decided numerically by the sampling
//! oracle in [`oracle`], not by canonical-form rewriting.

mod number;

pub mod diff;
pub mod domain;
pub mod eval;
pub mod normalize;
pub mod oracle;
pub mod parse;
pub mod render;

pub use diff::differentiate;
pub use domain::{SampleDomain, SamplePoint};
pub use eval::{evaluate, EvalError};
pub use normalize::normalize;
pub use number::Number;
pub use oracle::{equal_on_samples, zero_on_samples, OracleError, Verdict, ABS_FLOOR, DEFAULT_TOL};
pub use parse::{parse, ParseError};
pub use render::render;

use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Unary function tags supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryFn {
    Sin,
    Cos,
    Tan,
    Cot,
    Ln,
    Sqrt,
    Exp,
}

impl UnaryFn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Tan => "tan",
            UnaryFn::Cot => "cot",
            UnaryFn::Ln => "ln",
            UnaryFn::Sqrt => "sqrt",
            UnaryFn::Exp => "exp",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryFn> {
        Some(match name {
            "sin" => UnaryFn::Sin,
            "cos" => UnaryFn::Cos,
            "tan" => UnaryFn::Tan,
            "cot" => UnaryFn::Cot,
            "ln" => UnaryFn::Ln,
            "sqrt" => UnaryFn::Sqrt,
            "exp" => UnaryFn::Exp,
            _ => return None,
        })
    }
}

/// Symbolic expression tree.
///
/// Sums and products are n-ary. `Neg` and `Quotient` exist for direct AST
/// construction; [`normalize`] lowers them into products with numeric
/// coefficients and negative powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Number),
    Symbol(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Func(UnaryFn, Box<Expr>),
}

impl Expr {
    pub fn integer(n: i64) -> Expr {
        Expr::Number(Number::integer(n))
    }

    pub fn rational(num: i64, den: i64) -> Expr {
        Expr::Number(Number::rational(num, den))
    }

    pub fn real(x: f64) -> Expr {
        Expr::Number(Number::real(x))
    }

    pub fn zero() -> Expr {
        Expr::integer(0)
    }

    pub fn one() -> Expr {
        Expr::integer(1)
    }

    pub fn symbol(name: impl Into<String>) -> Expr {
        Expr::Symbol(name.into())
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum(terms)
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::Product(factors)
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::Power(Box::new(base), Box::new(exponent))
    }

    pub fn powi(base: Expr, exponent: i64) -> Expr {
        Expr::pow(base, Expr::integer(exponent))
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn quotient(num: Expr, den: Expr) -> Expr {
        Expr::Quotient(Box::new(num), Box::new(den))
    }

    pub fn func(f: UnaryFn, arg: Expr) -> Expr {
        Expr::Func(f, Box::new(arg))
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::func(UnaryFn::Sqrt, e)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Number(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Number(n) if n.is_one())
    }

    pub fn as_number(&self) -> Option<Number> {
        match self {
            Expr::Number(n) => Some(*n),
            _ => None,
        }
    }

    /// All symbol names appearing in the expression.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Number(_) => {}
            Expr::Symbol(s) => {
                out.insert(s.clone());
            }
            Expr::Sum(ts) | Expr::Product(ts) => {
                for t in ts {
                    t.collect_symbols(out);
                }
            }
            Expr::Power(a, b) | Expr::Quotient(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Neg(a) | Expr::Func(_, a) => a.collect_symbols(out),
        }
    }

    pub fn depends_on(&self, name: &str) -> bool {
        match self {
            Expr::Number(_) => false,
            Expr::Symbol(s) => s == name,
            Expr::Sum(ts) | Expr::Product(ts) => ts.iter().any(|t| t.depends_on(name)),
            Expr::Power(a, b) | Expr::Quotient(a, b) => a.depends_on(name) || b.depends_on(name),
            Expr::Neg(a) | Expr::Func(_, a) => a.depends_on(name),
        }
    }

    /// Replace symbols by expressions (used for curve composition).
    pub fn substitute(&self, bindings: &[(String, Expr)]) -> Expr {
        match self {
            Expr::Number(_) => self.clone(),
            Expr::Symbol(s) => bindings
                .iter()
                .find(|(name, _)| name == s)
                .map(|(_, e)| e.clone())
                .unwrap_or_else(|| self.clone()),
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.substitute(bindings)).collect()),
            Expr::Product(ts) => Expr::Product(ts.iter().map(|t| t.substitute(bindings)).collect()),
            Expr::Power(a, b) => Expr::pow(a.substitute(bindings), b.substitute(bindings)),
            Expr::Quotient(a, b) => Expr::quotient(a.substitute(bindings), b.substitute(bindings)),
            Expr::Neg(a) => Expr::neg(a.substitute(bindings)),
            Expr::Func(f, a) => Expr::func(*f, a.substitute(bindings)),
        }
    }
}

fn variant_rank(e: &Expr) -> u8 {
    match e {
        Expr::Number(_) => 0,
        Expr::Symbol(_) => 1,
        Expr::Power(_, _) => 2,
        Expr::Func(_, _) => 3,
        Expr::Product(_) => 4,
        Expr::Sum(_) => 5,
        Expr::Neg(_) => 6,
        Expr::Quotient(_, _) => 7,
    }
}

/// Total order used for canonical operand sorting in sums and products.
pub fn canonical_cmp(a: &Expr, b: &Expr) -> Ordering {
    let ra = variant_rank(a);
    let rb = variant_rank(b);
    if ra != rb {
        return ra.cmp(&rb);
    }
    match (a, b) {
        (Expr::Number(x), Expr::Number(y)) => x.cmp_value(*y).then_with(|| {
            // Keep rational/real variants apart so sorting matches PartialEq.
            let tag = |n: &Number| matches!(n, Number::Real(_)) as u8;
            tag(x).cmp(&tag(y))
        }),
        (Expr::Symbol(x), Expr::Symbol(y)) => x.cmp(y),
        (Expr::Power(xb, xe), Expr::Power(yb, ye)) => {
            canonical_cmp(xb, yb).then_with(|| canonical_cmp(xe, ye))
        }
        (Expr::Func(xf, xa), Expr::Func(yf, ya)) => xf.cmp(yf).then_with(|| canonical_cmp(xa, ya)),
        (Expr::Product(xs), Expr::Product(ys)) | (Expr::Sum(xs), Expr::Sum(ys)) => {
            for (x, y) in xs.iter().zip(ys.iter()) {
                let c = canonical_cmp(x, y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Expr::Neg(x), Expr::Neg(y)) => canonical_cmp(x, y),
        (Expr::Quotient(xa, xb), Expr::Quotient(ya, yb)) => {
            canonical_cmp(xa, ya).then_with(|| canonical_cmp(xb, yb))
        }
        _ => unreachable!("variant ranks matched"),
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render(self))
    }
}

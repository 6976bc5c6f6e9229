//! Numeric evaluation of expressions at sample points.

use super::{render, Expr, SamplePoint, UnaryFn};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("unbound symbol '{0}'")]
    UnboundSymbol(String),
    #[error("domain error in '{subexpr}': {detail}")]
    Domain { subexpr: String, detail: String },
}

fn domain_err(e: &Expr, detail: impl Into<String>) -> EvalError {
    EvalError::Domain {
        subexpr: render(e),
        detail: detail.into(),
    }
}

/// Evaluate `e` at `point`. Every symbol must be bound; domain failures
/// (log of a non-positive value, division by zero, non-finite results)
/// are reported with the offending subexpression.
pub fn evaluate(e: &Expr, point: &SamplePoint) -> Result<f64, EvalError> {
    let v = eval_inner(e, point)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain_err(e, "non-finite result"))
    }
}

fn eval_inner(e: &Expr, point: &SamplePoint) -> Result<f64, EvalError> {
    let v = match e {
        Expr::Number(n) => n.to_f64(),
        Expr::Symbol(s) => point
            .get(s)
            .ok_or_else(|| EvalError::UnboundSymbol(s.clone()))?,
        Expr::Sum(ts) => {
            let mut acc = 0.0;
            for t in ts {
                acc += eval_inner(t, point)?;
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = 1.0;
            for f in fs {
                acc *= eval_inner(f, point)?;
            }
            acc
        }
        Expr::Power(b, x) => {
            let base = eval_inner(b, point)?;
            let exp = eval_inner(x, point)?;
            let v = base.powf(exp);
            if !v.is_finite() {
                return Err(domain_err(e, format!("{base} raised to {exp}")));
            }
            v
        }
        Expr::Neg(a) => -eval_inner(a, point)?,
        Expr::Quotient(a, b) => {
            let num = eval_inner(a, point)?;
            let den = eval_inner(b, point)?;
            if den == 0.0 {
                return Err(domain_err(e, "division by zero"));
            }
            num / den
        }
        Expr::Func(f, a) => {
            let x = eval_inner(a, point)?;
            match f {
                UnaryFn::Sin => x.sin(),
                UnaryFn::Cos => x.cos(),
                UnaryFn::Tan => {
                    let c = x.cos();
                    if c == 0.0 {
                        return Err(domain_err(e, "tan at odd multiple of pi/2"));
                    }
                    x.sin() / c
                }
                UnaryFn::Cot => {
                    let s = x.sin();
                    if s == 0.0 {
                        return Err(domain_err(e, "cot at multiple of pi"));
                    }
                    x.cos() / s
                }
                UnaryFn::Ln => {
                    if x <= 0.0 {
                        return Err(domain_err(e, format!("ln of non-positive value {x}")));
                    }
                    x.ln()
                }
                // argument taken as non-negative by convention
                UnaryFn::Sqrt => x.abs().sqrt(),
                UnaryFn::Exp => x.exp(),
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain_err(e, "non-finite result"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn at(text: &str, coords: &[(&str, f64)]) -> Result<f64, EvalError> {
        let p = SamplePoint::new(
            coords
                .iter()
                .map(|(n, v)| (n.to_string(), *v))
                .collect(),
        );
        evaluate(&parse(text).unwrap(), &p)
    }

    #[test]
    fn basic_values() {
        assert_eq!(at("rho^2", &[("rho", 1.5)]).unwrap(), 2.25);
        assert_eq!(at("sin(theta)", &[("theta", 0.0)]).unwrap(), 0.0);
    }

    #[test]
    fn singularity_is_a_domain_error() {
        match at("1/rho", &[("rho", 0.0)]) {
            Err(EvalError::Domain { subexpr, .. }) => assert!(subexpr.contains("rho")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn unbound_symbol() {
        assert_eq!(
            at("x + y", &[("x", 1.0)]),
            Err(EvalError::UnboundSymbol("y".into()))
        );
    }

    #[test]
    fn sqrt_uses_absolute_value() {
        assert_eq!(at("sqrt(x)", &[("x", -4.0)]).unwrap(), 2.0);
    }
}

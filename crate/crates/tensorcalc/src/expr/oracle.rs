//! The sampling-equality oracle.
//!
//! Two expressions are accepted as equal when they agree, within a relative
//! tolerance, at every one of K deterministic pseudo-random points of a
//! sampling domain. This replaces full symbolic simplification: the
//! identities this engine certifies are analytic, so disagreement anywhere
//! implies disagreement almost everywhere and the false-pass probability at
//! 20 points is negligible.

use super::{evaluate, EvalError, Expr, SampleDomain, SamplePoint};
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const ABS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("evaluation failed twice at resampled points; domain badly chosen: {detail}")]
    BadDomain { detail: String },
    #[error("expression binds symbol outside the domain: {0}")]
    Unbound(String),
}

/// Oracle verdict: whether the expressions agreed everywhere, plus the worst
/// scaled residual |a-b| / max(1, |a|, |b|) and the point where it occurred.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub equal: bool,
    pub max_residual: f64,
    pub worst_point: Option<SamplePoint>,
}

impl Verdict {
    fn trivial() -> Verdict {
        Verdict {
            equal: true,
            max_residual: 0.0,
            worst_point: None,
        }
    }
}

/// Check |a(p) - b(p)| <= max(tol * max(1, |a|, |b|), absolute floor) at all
/// K points of the domain. A point where either side hits an evaluation
/// domain error is resampled once; a second failure aborts.
pub fn equal_on_samples(
    a: &Expr,
    b: &Expr,
    domain: &SampleDomain,
    tol: f64,
) -> Result<Verdict, OracleError> {
    let mut sampler = domain.sampler();
    let mut verdict = Verdict::trivial();
    for _ in 0..domain.samples {
        let point = sampler.next_point();
        let values = match eval_pair(a, b, &point)? {
            Some(v) => Some(v),
            None => {
                let retry = sampler.next_point();
                match eval_pair(a, b, &retry)? {
                    Some(v) => Some(v),
                    None => {
                        return Err(OracleError::BadDomain {
                            detail: describe_failure(a, b, &retry),
                        })
                    }
                }
            }
        };
        let (va, vb, point) = values.map(|(x, y)| (x, y, point)).unwrap();
        let scale = 1f64.max(va.abs()).max(vb.abs());
        let diff = (va - vb).abs();
        let residual = diff / scale;
        if residual > verdict.max_residual {
            verdict.max_residual = residual;
            verdict.worst_point = Some(point.clone());
        }
        if diff > (tol * scale).max(ABS_FLOOR) {
            verdict.equal = false;
        }
    }
    Ok(verdict)
}

/// Shorthand for comparing against zero.
pub fn zero_on_samples(e: &Expr, domain: &SampleDomain, tol: f64) -> Result<Verdict, OracleError> {
    equal_on_samples(e, &Expr::zero(), domain, tol)
}

fn eval_pair(
    a: &Expr,
    b: &Expr,
    point: &SamplePoint,
) -> Result<Option<(f64, f64)>, OracleError> {
    let va = match evaluate(a, point) {
        Ok(v) => v,
        Err(EvalError::UnboundSymbol(s)) => return Err(OracleError::Unbound(s)),
        Err(EvalError::Domain { .. }) => return Ok(None),
    };
    let vb = match evaluate(b, point) {
        Ok(v) => v,
        Err(EvalError::UnboundSymbol(s)) => return Err(OracleError::Unbound(s)),
        Err(EvalError::Domain { .. }) => return Ok(None),
    };
    Ok(Some((va, vb)))
}

fn describe_failure(a: &Expr, b: &Expr, point: &SamplePoint) -> String {
    for e in [a, b] {
        if let Err(err) = evaluate(e, point) {
            return err.to_string();
        }
    }
    "unknown".to_string()
}

#[cfg(test)]
mod tests {
    use super::super::{differentiate, parse};
    use super::*;

    fn cylindrical_domain() -> SampleDomain {
        SampleDomain::new(vec![
            ("rho".into(), 0.5, 2.0),
            ("phi".into(), 0.1, 3.0),
            ("z".into(), -1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn derivative_matches_closed_form() {
        let d = cylindrical_domain();
        let a = parse("rho").unwrap();
        let half = parse("1/2").unwrap();
        let b = Expr::Product(vec![half, differentiate(&parse("rho^2").unwrap(), "rho")]);
        let v = equal_on_samples(&a, &b, &d, DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }

    #[test]
    fn pythagorean_identity_holds() {
        let d = SampleDomain::single("theta", 0.3, 2.8).unwrap();
        let a = parse("sin(theta)^2 + cos(theta)^2").unwrap();
        let v = equal_on_samples(&a, &Expr::one(), &d, DEFAULT_TOL).unwrap();
        assert!(v.equal);
    }

    #[test]
    fn perturbation_is_detected_with_its_residual() {
        let d = cylindrical_domain();
        let a = parse("rho").unwrap();
        let b = parse("rho + 0.001").unwrap();
        let v = equal_on_samples(&a, &b, &d, 1e-9).unwrap();
        assert!(!v.equal);
        assert!((v.max_residual - 0.001).abs() < 1e-6, "{}", v.max_residual);
        assert!(v.worst_point.is_some());
    }

    #[test]
    fn persistent_domain_error_is_reported() {
        // ln of a strictly negative interval fails at every point
        let d = SampleDomain::single("x", -2.0, -1.0).unwrap();
        let a = parse("ln(x)").unwrap();
        match equal_on_samples(&a, &Expr::zero(), &d, DEFAULT_TOL) {
            Err(OracleError::BadDomain { .. }) => {}
            other => panic!("expected BadDomain, got {other:?}"),
        }
    }
}

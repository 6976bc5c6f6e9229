//! Symbolic partial differentiation.

use super::{normalize, Expr, UnaryFn};

/// Partial derivative of `e` with respect to the coordinate symbol `sym`.
/// The result is normalized.
pub fn differentiate(e: &Expr, sym: &str) -> Expr {
    normalize(&d(e, sym))
}

fn d(e: &Expr, sym: &str) -> Expr {
    match e {
        Expr::Number(_) => Expr::zero(),
        Expr::Symbol(s) => {
            if s == sym {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| d(t, sym)).collect()),
        Expr::Product(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for i in 0..fs.len() {
                let mut factors = fs.clone();
                factors[i] = d(&fs[i], sym);
                terms.push(Expr::Product(factors));
            }
            Expr::Sum(terms)
        }
        Expr::Power(base, exp) => {
            if !exp.depends_on(sym) {
                // e * b^(e-1) * b'
                let lowered = Expr::pow(
                    (**base).clone(),
                    Expr::Sum(vec![(**exp).clone(), Expr::integer(-1)]),
                );
                Expr::Product(vec![(**exp).clone(), lowered, d(base, sym)])
            } else {
                // b^e * (e' ln b + e b'/b)
                let inner = Expr::Sum(vec![
                    Expr::Product(vec![d(exp, sym), Expr::func(UnaryFn::Ln, (**base).clone())]),
                    Expr::Product(vec![
                        (**exp).clone(),
                        Expr::quotient(d(base, sym), (**base).clone()),
                    ]),
                ]);
                Expr::Product(vec![e.clone(), inner])
            }
        }
        Expr::Neg(a) => Expr::neg(d(a, sym)),
        Expr::Quotient(a, b) => {
            let num = Expr::Sum(vec![
                Expr::Product(vec![d(a, sym), (**b).clone()]),
                Expr::neg(Expr::Product(vec![(**a).clone(), d(b, sym)])),
            ]);
            Expr::quotient(num, Expr::powi((**b).clone(), 2))
        }
        Expr::Func(f, a) => {
            let da = d(a, sym);
            let arg = (**a).clone();
            let outer = match f {
                UnaryFn::Sin => Expr::func(UnaryFn::Cos, arg),
                UnaryFn::Cos => Expr::neg(Expr::func(UnaryFn::Sin, arg)),
                UnaryFn::Tan => Expr::powi(Expr::func(UnaryFn::Cos, arg), -2),
                UnaryFn::Cot => Expr::neg(Expr::powi(Expr::func(UnaryFn::Sin, arg), -2)),
                UnaryFn::Ln => Expr::powi(arg, -1),
                UnaryFn::Sqrt => Expr::quotient(
                    Expr::one(),
                    Expr::Product(vec![Expr::integer(2), Expr::sqrt(arg)]),
                ),
                UnaryFn::Exp => Expr::func(UnaryFn::Exp, arg),
            };
            Expr::Product(vec![outer, da])
        }
    }
}

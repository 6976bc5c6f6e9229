//! Expression rendering. Inverse of the parser on parser-reachable and
//! normalized trees: `parse(render(e)) == e` for those forms.

use super::{Expr, Number};

pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(e, &mut s);
    s
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Sum(terms) if !terms.is_empty() => {
            write_sum_operand(&terms[0], out, true);
            for t in &terms[1..] {
                if let Some(pos) = print_negated(t) {
                    out.push_str(" - ");
                    write_sum_operand(&pos, out, false);
                } else {
                    out.push_str(" + ");
                    write_sum_operand(t, out, false);
                }
            }
        }
        Expr::Sum(_) => out.push('0'),
        _ => write_term(e, out),
    }
}

/// If the term has a negative numeric head, return it with the head negated.
/// The unit head is dropped only when it is exactly the rational 1, so the
/// rational/real distinction survives the round trip.
fn print_negated(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Number(n) if n.is_negative() => Some(Expr::Number(n.neg())),
        Expr::Product(fs) => match fs.first() {
            Some(Expr::Number(n)) if n.is_negative() => {
                let head = n.neg();
                let rest: Vec<Expr> = fs[1..].to_vec();
                let exact_one = head.as_integer() == Some(1);
                if exact_one && rest.len() == 1 {
                    Some(rest.into_iter().next().unwrap())
                } else if exact_one && !rest.is_empty() {
                    Some(Expr::Product(rest))
                } else {
                    let mut v = vec![Expr::Number(head)];
                    v.extend(rest);
                    Some(Expr::Product(v))
                }
            }
            _ => None,
        },
        _ => None,
    }
}

fn write_sum_operand(e: &Expr, out: &mut String, _first: bool) {
    match e {
        Expr::Sum(_) | Expr::Quotient(_, _) | Expr::Neg(_) => {
            out.push('(');
            write_expr(e, out);
            out.push(')');
        }
        _ => write_term(e, out),
    }
}

fn write_term(e: &Expr, out: &mut String) {
    match e {
        Expr::Product(fs) if !fs.is_empty() => write_product(fs, out),
        Expr::Product(_) => out.push('1'),
        Expr::Quotient(a, b) => {
            write_factor(a, out, false);
            out.push('/');
            write_factor(b, out, true);
        }
        Expr::Neg(a) => {
            out.push_str("-(");
            write_expr(a, out);
            out.push(')');
        }
        _ => write_factor(e, out, false),
    }
}

fn write_product(fs: &[Expr], out: &mut String) {
    // split negative constant exponents into a denominator
    let mut numerator: Vec<Expr> = Vec::new();
    let mut denominator: Vec<Expr> = Vec::new();
    for f in fs {
        match f {
            // zero-literal bases keep exponent form: "0^-1" re-parses
            // exactly, "1/0" would not
            Expr::Power(base, exp) if !base.is_zero() => match exp.as_number() {
                Some(n) if n.is_negative() => {
                    let ne = n.neg();
                    if ne.is_one() {
                        denominator.push((**base).clone());
                    } else {
                        denominator.push(Expr::Power(base.clone(), Box::new(Expr::Number(ne))));
                    }
                }
                _ => numerator.push(f.clone()),
            },
            _ => numerator.push(f.clone()),
        }
    }
    // a leading exact -1 coefficient prints as a bare sign
    if numerator.len() > 1 {
        if let Expr::Number(n) = &numerator[0] {
            if n.as_integer() == Some(-1) {
                out.push('-');
                numerator.remove(0);
            }
        }
    }
    if numerator.is_empty() {
        out.push('1');
    } else {
        for (i, f) in numerator.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            write_factor(f, out, i > 0);
        }
    }
    if !denominator.is_empty() {
        out.push('/');
        if denominator.len() == 1 {
            write_factor(&denominator[0], out, true);
        } else {
            out.push('(');
            for (i, f) in denominator.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                write_factor(f, out, i > 0);
            }
            out.push(')');
        }
    }
}

fn number_needs_parens(n: &Number) -> bool {
    n.is_negative() || n.as_integer().is_none()
}

/// `guarded` is true when the factor sits after a '*' or '/' and a bare
/// negative or fractional literal would re-lex differently.
fn write_factor(e: &Expr, out: &mut String, guarded: bool) {
    match e {
        Expr::Number(n) => {
            if guarded && number_needs_parens(n) {
                out.push('(');
                out.push_str(&n.to_string());
                out.push(')');
            } else {
                out.push_str(&n.to_string());
            }
        }
        Expr::Symbol(s) => out.push_str(s),
        Expr::Func(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(a, out);
            out.push(')');
        }
        Expr::Power(base, exp) => {
            // a lone negative power prints as a reciprocal: 1/rho, 1/rho^2
            match exp.as_number() {
                Some(n) if n.is_negative() && !guarded && !base.is_zero() => {
                    out.push_str("1/");
                    let flipped = n.neg();
                    if flipped.is_one() {
                        write_power_base(base, out);
                    } else {
                        write_power_base(base, out);
                        out.push('^');
                        write_power_exponent(&Expr::Number(flipped), out);
                    }
                }
                _ => {
                    write_power_base(base, out);
                    out.push('^');
                    write_power_exponent(exp, out);
                }
            }
        }
        Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(_, _) | Expr::Neg(_) => {
            out.push('(');
            write_expr(e, out);
            out.push(')');
        }
    }
}

fn write_power_base(base: &Expr, out: &mut String) {
    match base {
        Expr::Symbol(s) => out.push_str(s),
        Expr::Func(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(a, out);
            out.push(')');
        }
        Expr::Number(n) if !number_needs_parens(n) => out.push_str(&n.to_string()),
        _ => {
            out.push('(');
            write_expr(base, out);
            out.push(')');
        }
    }
}

fn write_power_exponent(exp: &Expr, out: &mut String) {
    match exp {
        Expr::Number(n) => {
            // negative and real exponents re-parse through the unary rule
            if n.as_integer().is_some() || matches!(n, Number::Real(_)) {
                out.push_str(&n.to_string());
            } else {
                out.push('(');
                out.push_str(&n.to_string());
                out.push(')');
            }
        }
        Expr::Symbol(s) => out.push_str(s),
        _ => {
            out.push('(');
            write_expr(exp, out);
            out.push(')');
        }
    }
}

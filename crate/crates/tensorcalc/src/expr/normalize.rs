//! Light normalization: flattening, constant folding, like-term collection,
//! canonical operand ordering and the sin²+cos² pair fold. Idempotent, and
//! value-preserving on the sampling domains (checked by property tests).
//!
//! This is deliberately not a full simplifier; equality of expressions is
//! certified numerically by the oracle, so normalization only has to make
//! structural zeros recognizable and keep tables readable.

use super::{canonical_cmp, Expr, Number, UnaryFn};
use std::cmp::Ordering;

pub fn normalize(e: &Expr) -> Expr {
    match e {
        Expr::Number(_) | Expr::Symbol(_) => e.clone(),
        Expr::Sum(ts) => norm_sum(ts.iter().map(normalize).collect()),
        Expr::Product(ts) => norm_product(ts.iter().map(normalize).collect()),
        Expr::Power(a, b) => norm_power(normalize(a), normalize(b)),
        Expr::Neg(a) => norm_product(vec![Expr::integer(-1), normalize(a)]),
        Expr::Quotient(a, b) => {
            let num = normalize(a);
            let den = normalize(b);
            norm_product(vec![num, norm_power(den, Expr::integer(-1))])
        }
        Expr::Func(f, a) => norm_func(*f, normalize(a)),
    }
}

fn norm_func(f: UnaryFn, arg: Expr) -> Expr {
    if let Some(n) = arg.as_number() {
        if let Some(folded) = fold_func(f, n) {
            return folded;
        }
    }
    Expr::func(f, arg)
}

fn fold_func(f: UnaryFn, n: Number) -> Option<Expr> {
    // exact special cases first
    if let Some(k) = n.as_integer() {
        match (f, k) {
            (UnaryFn::Sin | UnaryFn::Tan, 0) => return Some(Expr::zero()),
            (UnaryFn::Cos | UnaryFn::Exp, 0) => return Some(Expr::one()),
            (UnaryFn::Sqrt, 0) => return Some(Expr::zero()),
            (UnaryFn::Ln, 1) => return Some(Expr::zero()),
            _ => {}
        }
    }
    if f == UnaryFn::Sqrt {
        // sqrt takes the absolute value of its argument by convention
        if let Number::Rational(r) = n {
            let r = if n.is_negative() { -r } else { r };
            if let (Some(p), Some(q)) = (exact_isqrt(*r.numer()), exact_isqrt(*r.denom())) {
                return Some(Expr::rational(p, q));
            }
        }
        let v = n.abs().to_f64().sqrt();
        return v.is_finite().then(|| Expr::real(v));
    }
    let x = n.to_f64();
    let v = match f {
        UnaryFn::Sin => x.sin(),
        UnaryFn::Cos => x.cos(),
        UnaryFn::Tan => x.tan(),
        UnaryFn::Cot => {
            let s = x.sin();
            if s == 0.0 {
                return None;
            }
            x.cos() / s
        }
        UnaryFn::Ln => {
            if x <= 0.0 {
                return None;
            }
            x.ln()
        }
        UnaryFn::Exp => x.exp(),
        UnaryFn::Sqrt => unreachable!(),
    };
    v.is_finite().then(|| Expr::real(v))
}

fn exact_isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c.checked_mul(c) == Some(n) {
            return Some(c);
        }
    }
    None
}

fn norm_power(base: Expr, exp: Expr) -> Expr {
    if exp.is_zero() {
        return Expr::one();
    }
    if exp.is_one() {
        return base;
    }
    if base.is_one() {
        return Expr::one();
    }
    if let (Some(b), Some(e)) = (base.as_number(), exp.as_number()) {
        if let Some(k) = e.as_integer() {
            if !(b.is_zero() && k < 0) {
                return Expr::Number(b.powi(k));
            }
        } else if !b.is_negative() {
            let v = b.to_f64().powf(e.to_f64());
            if v.is_finite() {
                return Expr::real(v);
            }
        }
    }
    if base.is_zero() {
        if let Some(e) = exp.as_number() {
            if !e.is_negative() && !e.is_zero() {
                return Expr::zero();
            }
        }
    }
    if let Some(k) = exp.as_number().and_then(|n| n.as_integer()) {
        match base {
            // (x^m)^k -> x^(m*k) for integer k
            Expr::Power(inner_base, inner_exp) => {
                let merged = norm_product(vec![*inner_exp, Expr::integer(k)]);
                return norm_power(*inner_base, merged);
            }
            // (a*b)^k -> a^k * b^k
            Expr::Product(fs) => {
                return norm_product(
                    fs.into_iter()
                        .map(|f| norm_power(f, Expr::integer(k)))
                        .collect(),
                );
            }
            _ => {}
        }
    }
    Expr::pow(base, exp)
}

fn flatten_products(factors: Vec<Expr>, out: &mut Vec<Expr>) {
    for f in factors {
        match f {
            Expr::Product(inner) => flatten_products(inner, out),
            other => out.push(other),
        }
    }
}

fn norm_product(factors: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    flatten_products(factors, &mut flat);

    let mut coeff = Number::integer(1);
    let mut bases: Vec<(Expr, Vec<Expr>)> = Vec::new();
    for f in flat {
        match f {
            Expr::Number(n) => coeff = coeff.mul(n),
            Expr::Power(b, e) => merge_base(&mut bases, *b, *e),
            other => merge_base(&mut bases, other, Expr::one()),
        }
    }
    if coeff.is_zero() {
        return Expr::zero();
    }

    let mut rest: Vec<Expr> = Vec::new();
    for (base, exps) in bases {
        let total = norm_sum(exps);
        match norm_power(base, total) {
            Expr::Number(n) => coeff = coeff.mul(n),
            Expr::Product(fs) => rest.extend(fs),
            other => rest.push(other),
        }
    }
    if coeff.is_zero() {
        return Expr::zero();
    }

    // distribute a pure numeric coefficient over a sum
    if rest.len() == 1 && matches!(rest[0], Expr::Sum(_)) && !coeff.is_one() {
        if let Expr::Sum(terms) = rest.pop().unwrap() {
            return norm_sum(
                terms
                    .into_iter()
                    .map(|t| norm_product(vec![Expr::Number(coeff), t]))
                    .collect(),
            );
        }
        unreachable!()
    }

    if rest.is_empty() {
        return Expr::Number(coeff);
    }
    if !coeff.is_one() {
        rest.push(Expr::Number(coeff));
    }
    if rest.len() == 1 {
        return rest.pop().unwrap();
    }
    rest.sort_by(canonical_cmp);
    Expr::Product(rest)
}

fn merge_base(bases: &mut Vec<(Expr, Vec<Expr>)>, base: Expr, exp: Expr) {
    for (b, exps) in bases.iter_mut() {
        if *b == base {
            exps.push(exp);
            return;
        }
    }
    bases.push((base, vec![exp]));
}

fn flatten_sums(terms: Vec<Expr>, out: &mut Vec<Expr>) {
    for t in terms {
        match t {
            Expr::Sum(inner) => flatten_sums(inner, out),
            other => out.push(other),
        }
    }
}

/// Split a normalized term into (numeric coefficient, key factors).
fn split_coeff(term: Expr) -> (Number, Vec<Expr>) {
    match term {
        Expr::Number(n) => (n, Vec::new()),
        Expr::Product(fs) => {
            let mut coeff = Number::integer(1);
            let mut key = Vec::new();
            for f in fs {
                match f {
                    Expr::Number(n) => coeff = coeff.mul(n),
                    other => key.push(other),
                }
            }
            (coeff, key)
        }
        other => (Number::integer(1), vec![other]),
    }
}

fn rebuild_term(coeff: Number, mut key: Vec<Expr>) -> Expr {
    if key.is_empty() {
        return Expr::Number(coeff);
    }
    if coeff.is_one() && key.len() == 1 {
        return key.pop().unwrap();
    }
    if !coeff.is_one() {
        key.push(Expr::Number(coeff));
    }
    if key.len() == 1 {
        return key.pop().unwrap();
    }
    key.sort_by(canonical_cmp);
    Expr::Product(key)
}

fn key_cmp(a: &[Expr], b: &[Expr]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let c = canonical_cmp(x, y);
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

fn add_entry(entries: &mut Vec<(Vec<Expr>, Number)>, key: Vec<Expr>, coeff: Number) {
    match entries.binary_search_by(|(k, _)| key_cmp(k, &key)) {
        Ok(i) => entries[i].1 = entries[i].1.add(coeff),
        Err(i) => entries.insert(i, (key, coeff)),
    }
}

fn norm_sum(terms: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    flatten_sums(terms, &mut flat);

    let mut constant = Number::integer(0);
    let mut entries: Vec<(Vec<Expr>, Number)> = Vec::new();
    for t in flat {
        let (coeff, mut key) = split_coeff(t);
        if key.is_empty() {
            constant = constant.add(coeff);
        } else {
            key.sort_by(canonical_cmp);
            add_entry(&mut entries, key, coeff);
        }
    }

    pythagorean_fold(&mut entries, &mut constant);

    let mut out: Vec<Expr> = Vec::new();
    if !constant.is_zero() {
        out.push(Expr::Number(constant));
    }
    for (key, coeff) in entries {
        if coeff.is_zero() {
            continue;
        }
        out.push(rebuild_term(coeff, key));
    }
    if out.is_empty() {
        return Expr::zero();
    }
    if out.len() == 1 {
        return out.pop().unwrap();
    }
    out.sort_by(canonical_cmp);
    Expr::Sum(out)
}

/// Integer exponent of a sin/cos factor of the given argument.
fn trig_power(factor: &Expr, f: UnaryFn) -> Option<(Expr, i64)> {
    match factor {
        Expr::Func(tag, arg) if *tag == f => Some(((**arg).clone(), 1)),
        Expr::Power(base, exp) => match base.as_ref() {
            Expr::Func(tag, arg) if *tag == f => {
                let k = exp.as_number()?.as_integer()?;
                Some(((**arg).clone(), k))
            }
            _ => None,
        },
        _ => None,
    }
}

fn trig_factor(f: UnaryFn, arg: &Expr, k: i64) -> Option<Expr> {
    match k {
        0 => None,
        1 => Some(Expr::func(f, arg.clone())),
        _ => Some(Expr::powi(Expr::func(f, arg.clone()), k)),
    }
}

/// Replace the factor at `fi` by the same trig function with exponent
/// changed by `delta_own`, and shift the opposite function's exponent by
/// `delta_other`, keeping the key canonically sorted.
fn shifted_key(
    key: &[Expr],
    fi: usize,
    f: UnaryFn,
    arg: &Expr,
    k: i64,
    other: UnaryFn,
    delta_other: i64,
) -> Vec<Expr> {
    let mut out: Vec<Expr> = Vec::with_capacity(key.len() + 1);
    let mut other_exp = delta_other;
    for (idx, factor) in key.iter().enumerate() {
        if idx == fi {
            continue;
        }
        if let Some((a, m)) = trig_power(factor, other) {
            if a == *arg {
                other_exp += m;
                continue;
            }
        }
        out.push(factor.clone());
    }
    if let Some(fct) = trig_factor(f, arg, k - 2) {
        out.push(fct);
    }
    if let Some(fct) = trig_factor(other, arg, other_exp) {
        out.push(fct);
    }
    out.sort_by(canonical_cmp);
    out
}

/// Fold c*R*sin(u)^k + c*R'*cos(u)^2 (with R' = R*sin(u)^(k-2)) into
/// c*R*sin(u)^(k-2), i.e. the sin^2 + cos^2 = 1 identity applied to like
/// coefficients.
fn pythagorean_fold(entries: &mut Vec<(Vec<Expr>, Number)>, constant: &mut Number) {
    let mut progress = true;
    let mut guard = 0;
    while progress && guard < 1000 {
        progress = false;
        guard += 1;
        'outer: for i in 0..entries.len() {
            if entries[i].1.is_zero() {
                continue;
            }
            for (fi, factor) in entries[i].0.iter().enumerate() {
                let Some((arg, k)) = trig_power(factor, UnaryFn::Sin) else {
                    continue;
                };
                if k < 2 {
                    continue;
                }
                // partner has sin^(k-2) cos^(m+2) and the same coefficient
                let partner_key =
                    shifted_key(&entries[i].0, fi, UnaryFn::Sin, &arg, k, UnaryFn::Cos, 2);
                let j = match entries.binary_search_by(|(key, _)| key_cmp(key, &partner_key)) {
                    Ok(j) => j,
                    Err(_) => continue,
                };
                if j == i || entries[j].1.cmp_value(entries[i].1) != Ordering::Equal {
                    continue;
                }
                let coeff = entries[i].1;
                let reduced =
                    shifted_key(&entries[i].0, fi, UnaryFn::Sin, &arg, k, UnaryFn::Cos, 0);
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                entries.remove(hi);
                entries.remove(lo);
                if reduced.is_empty() {
                    *constant = constant.add(coeff);
                } else {
                    add_entry(entries, reduced, coeff);
                }
                progress = true;
                break 'outer;
            }
        }
    }
}

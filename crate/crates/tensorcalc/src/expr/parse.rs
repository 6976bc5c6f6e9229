//! Recursive-descent parser for the expression grammar.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('^' unary)?          // '^' right-associative
//! atom    := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//! Integer literals become exact rationals; literals with a decimal point or
//! exponent become reals. The parser lowers unary minus and division into
//! products with numeric coefficients and negative powers, and sorts
//! commutative operand lists canonically, so that rendering a parsed
//! expression and parsing it again yields a structurally equal tree.

use super::{canonical_cmp, Expr, Number, UnaryFn};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {detail}")]
    Syntax { offset: usize, detail: String },
    #[error("unknown function '{name}' at offset {offset}")]
    UnknownFunction { offset: usize, name: String },
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.parse_expr()?;
    match p.peek() {
        Token::End(_) => Ok(e.expr),
        t => Err(ParseError::Syntax {
            offset: t.offset(),
            detail: "unexpected trailing input".into(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number { offset: usize, value: Number },
    Ident { offset: usize, name: String },
    Op { offset: usize, ch: char },
    End(usize),
}

impl Token {
    fn offset(&self) -> usize {
        match self {
            Token::Number { offset, .. } | Token::Ident { offset, .. } | Token::Op { offset, .. } => {
                *offset
            }
            Token::End(o) => *o,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            let mut is_real = false;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                is_real = true;
                i += 1;
                if i >= bytes.len() || !(bytes[i] as char).is_ascii_digit() {
                    return Err(ParseError::Syntax {
                        offset: i,
                        detail: "expected digits after decimal point".into(),
                    });
                }
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    is_real = true;
                    i = j;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let slice = &text[start..i];
            let value = if is_real {
                let x: f64 = slice.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    detail: format!("bad numeric literal '{slice}'"),
                })?;
                Number::real(x)
            } else {
                match slice.parse::<i64>() {
                    Ok(n) => Number::integer(n),
                    Err(_) => Number::real(slice.parse::<f64>().map_err(|_| {
                        ParseError::Syntax {
                            offset: start,
                            detail: format!("bad numeric literal '{slice}'"),
                        }
                    })?),
                }
            };
            out.push(Token::Number { offset: start, value });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            out.push(Token::Ident {
                offset: start,
                name: text[start..i].to_string(),
            });
        } else if matches!(c, '+' | '-' | '*' | '/' | '^' | '(' | ')') {
            out.push(Token::Op { offset: i, ch: c });
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                offset: i,
                detail: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push(Token::End(text.len()));
    Ok(out)
}

/// Parse result for one operand, tracking whether it is a bare numeric
/// literal (so `1/2` and `-3` fold into exact constants).
struct Operand {
    expr: Expr,
    bare_number: bool,
}

impl Operand {
    fn new(expr: Expr) -> Self {
        Operand { expr, bare_number: false }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_op(&mut self, ch: char) -> bool {
        if matches!(self.peek(), Token::Op { ch: c, .. } if *c == ch) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<Operand, ParseError> {
        let first = self.parse_term()?;
        let mut terms = vec![first.expr.clone()];
        let mut only_first = true;
        loop {
            if self.eat_op('+') {
                terms.push(self.parse_term()?.expr);
            } else if self.eat_op('-') {
                let rhs = self.parse_term()?.expr;
                terms.push(negate(rhs));
            } else {
                break;
            }
            only_first = false;
        }
        if only_first {
            return Ok(first);
        }
        terms.sort_by(canonical_cmp);
        Ok(Operand::new(Expr::Sum(terms)))
    }

    fn parse_term(&mut self) -> Result<Operand, ParseError> {
        let first = self.parse_unary()?;
        let mut acc = first;
        let mut factors: Vec<Expr> = Vec::new();
        let mut saw_operator = false;
        loop {
            if self.eat_op('*') {
                saw_operator = true;
                let rhs = self.parse_unary()?;
                if factors.is_empty() {
                    push_factor(acc.expr.clone(), &mut factors);
                }
                push_factor(rhs.expr, &mut factors);
            } else if self.eat_op('/') {
                saw_operator = true;
                let rhs = self.parse_unary()?;
                // literal/literal folds into an exact rational
                if factors.is_empty() && acc.bare_number && rhs.bare_number {
                    let a = acc.expr.as_number().unwrap();
                    let b = rhs.expr.as_number().unwrap();
                    if !b.is_zero() {
                        acc = Operand {
                            expr: Expr::Number(a.mul(b.recip())),
                            bare_number: true,
                        };
                        continue;
                    }
                }
                if factors.is_empty() {
                    let exactly_one =
                        acc.expr.as_number().and_then(|n| n.as_integer()) == Some(1);
                    if exactly_one {
                        // 1/x parses straight to a negative power
                        let mut inv = Vec::new();
                        push_inverted(rhs.expr, &mut inv);
                        if inv.len() == 1 {
                            acc = Operand::new(inv.pop().unwrap());
                            continue;
                        }
                        factors = inv;
                        continue;
                    }
                    push_factor(acc.expr.clone(), &mut factors);
                }
                push_inverted(rhs.expr, &mut factors);
            } else {
                break;
            }
        }
        if !saw_operator {
            return Ok(acc);
        }
        if factors.is_empty() {
            return Ok(acc);
        }
        // keep at most one numeric coefficient so products re-render stably
        let mut coeff: Option<Number> = None;
        let mut rest: Vec<Expr> = Vec::new();
        for f in factors {
            match f {
                Expr::Number(n) => {
                    coeff = Some(match coeff {
                        Some(c) => c.mul(n),
                        None => n,
                    })
                }
                other => rest.push(other),
            }
        }
        match coeff {
            Some(c) if rest.is_empty() => return Ok(Operand::new(Expr::Number(c))),
            Some(c) => {
                if c.as_integer() != Some(1) {
                    rest.push(Expr::Number(c));
                }
            }
            None => {}
        }
        if rest.len() == 1 {
            return Ok(Operand::new(rest.pop().unwrap()));
        }
        rest.sort_by(canonical_cmp);
        Ok(Operand::new(Expr::Product(rest)))
    }

    fn parse_unary(&mut self) -> Result<Operand, ParseError> {
        if self.eat_op('-') {
            let inner = self.parse_unary()?;
            if inner.bare_number {
                let n = inner.expr.as_number().unwrap();
                return Ok(Operand {
                    expr: Expr::Number(n.neg()),
                    bare_number: true,
                });
            }
            return Ok(Operand::new(negate(inner.expr)));
        }
        self.parse_postfix()
    }

    fn parse_postfix(&mut self) -> Result<Operand, ParseError> {
        let base = self.parse_atom()?;
        if self.eat_op('^') {
            let exp = self.parse_unary()?;
            // numeric integer powers fold so that reciprocal forms re-render
            // stably; non-finite results stay symbolic
            if let (Some(b), Some(e)) = (base.expr.as_number(), exp.expr.as_number()) {
                if let Some(k) = e.as_integer() {
                    if !(b.is_zero() && k < 0) {
                        let folded = b.powi(k);
                        if folded.to_f64().is_finite() {
                            return Ok(Operand {
                                expr: Expr::Number(folded),
                                bare_number: base.bare_number && exp.bare_number,
                            });
                        }
                    }
                }
            }
            return Ok(Operand::new(Expr::pow(base.expr, exp.expr)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Operand, ParseError> {
        match self.bump() {
            Token::Number { value, .. } => Ok(Operand {
                expr: Expr::Number(value),
                bare_number: true,
            }),
            Token::Ident { offset, name } => {
                if self.eat_op('(') {
                    let f = UnaryFn::from_name(&name)
                        .ok_or(ParseError::UnknownFunction { offset, name })?;
                    let arg = self.parse_expr()?;
                    if !self.eat_op(')') {
                        return Err(ParseError::Syntax {
                            offset: self.peek().offset(),
                            detail: "expected ')'".into(),
                        });
                    }
                    Ok(Operand::new(Expr::func(f, arg.expr)))
                } else {
                    Ok(Operand::new(Expr::Symbol(name)))
                }
            }
            Token::Op { offset, ch: '(' } => {
                let inner = self.parse_expr()?;
                if !self.eat_op(')') {
                    return Err(ParseError::Syntax {
                        offset: self.peek().offset(),
                        detail: "expected ')'".into(),
                    });
                }
                let _ = offset;
                Ok(Operand::new(inner.expr))
            }
            t => Err(ParseError::Syntax {
                offset: t.offset(),
                detail: "expected a number, symbol, function call or '('".into(),
            }),
        }
    }
}

/// Negation as the parser emits it: a numeric coefficient, never a `Neg`
/// node, and never an explicit exact-1 coefficient.
fn negate(e: Expr) -> Expr {
    match e {
        Expr::Number(n) => Expr::Number(n.neg()),
        Expr::Product(mut fs) => {
            if let Some(Expr::Number(head)) = fs.first().cloned() {
                let negated = head.neg();
                if negated.as_integer() == Some(1) {
                    fs.remove(0);
                    if fs.len() == 1 {
                        return fs.pop().unwrap();
                    }
                } else {
                    fs[0] = Expr::Number(negated);
                }
                Expr::Product(fs)
            } else {
                let mut out = vec![Expr::integer(-1)];
                out.extend(fs);
                out.sort_by(canonical_cmp);
                Expr::Product(out)
            }
        }
        other => {
            let mut out = vec![Expr::integer(-1), other];
            out.sort_by(canonical_cmp);
            Expr::Product(out)
        }
    }
}

fn push_factor(e: Expr, factors: &mut Vec<Expr>) {
    match e {
        Expr::Product(fs) => factors.extend(fs),
        other => factors.push(other),
    }
}

/// Numeric power folded to a literal when exact, finite and defined.
fn fold_numeric_power(base: &Expr, exp: &Expr) -> Option<Expr> {
    let b = base.as_number()?;
    let k = exp.as_number()?.as_integer()?;
    if b.is_zero() && k < 0 {
        return None;
    }
    let folded = b.powi(k);
    folded.to_f64().is_finite().then(|| Expr::Number(folded))
}

/// Push the factors of 1/e onto `factors`.
fn push_inverted(e: Expr, factors: &mut Vec<Expr>) {
    match e {
        // division by a literal zero stays symbolic and fails at evaluation
        Expr::Number(n) if n.is_zero() => factors.push(Expr::powi(Expr::Number(n), -1)),
        Expr::Number(n) => factors.push(Expr::Number(n.recip())),
        Expr::Power(base, exp) => {
            let inv_exp = match *exp {
                Expr::Number(n) => Expr::Number(n.neg()),
                other => negate(other),
            };
            match fold_numeric_power(&base, &inv_exp) {
                Some(folded) => factors.push(folded),
                None => factors.push(Expr::Power(base, Box::new(inv_exp))),
            }
        }
        Expr::Product(fs) => {
            for f in fs {
                push_inverted(f, factors);
            }
        }
        other => factors.push(Expr::powi(other, -1)),
    }
}

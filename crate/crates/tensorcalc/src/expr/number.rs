use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Numeric constant: exact rational where possible, f64 fallback.
#[derive(Clone, Copy, Debug)]
pub enum Number {
    Rational(Rational64),
    Real(f64),
}

impl Number {
    pub fn integer(n: i64) -> Self {
        Number::Rational(Rational64::from_integer(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        if den == 0 {
            Number::Real(f64::NAN)
        } else {
            Number::Rational(Rational64::new(num, den))
        }
    }

    pub fn real(x: f64) -> Self {
        Number::Real(x)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Real(x) => x,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Rational(r) => r.is_zero(),
            Number::Real(x) => x == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        match self {
            Number::Rational(r) => r == Rational64::from_integer(1),
            Number::Real(x) => x == 1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Number::Rational(r) => r.is_negative(),
            Number::Real(x) => x < 0.0,
        }
    }

    /// Exact integer value, if the number is an integral rational.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Number::Rational(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn add(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => match a.checked_add(&b) {
                Some(r) => Number::Rational(r),
                None => Number::Real(self.to_f64() + other.to_f64()),
            },
            _ => Number::Real(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => match a.checked_mul(&b) {
                Some(r) => Number::Rational(r),
                None => Number::Real(self.to_f64() * other.to_f64()),
            },
            _ => Number::Real(self.to_f64() * other.to_f64()),
        }
    }

    pub fn neg(self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(-r),
            Number::Real(x) => Number::Real(-x),
        }
    }

    pub fn abs(self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(r.abs()),
            Number::Real(x) => Number::Real(x.abs()),
        }
    }

    /// Reciprocal; zero maps to a real NaN which callers treat as a fold failure.
    pub fn recip(self) -> Number {
        match self {
            Number::Rational(r) if !r.is_zero() => Number::Rational(r.recip()),
            _ => Number::Real(1.0 / self.to_f64()),
        }
    }

    /// Integer power with exact rational arithmetic when it fits.
    pub fn powi(self, n: i64) -> Number {
        if n == 0 {
            return Number::integer(1);
        }
        let base = if n < 0 { self.recip() } else { self };
        let k = n.unsigned_abs();
        match base {
            Number::Rational(r) => {
                let mut acc = Rational64::from_integer(1);
                for _ in 0..k {
                    match acc.checked_mul(&r) {
                        Some(v) => acc = v,
                        None => return Number::Real(base.to_f64().powi(n.unsigned_abs() as i32)),
                    }
                }
                Number::Rational(acc)
            }
            Number::Real(x) => Number::Real(x.powi(k as i32)),
        }
    }

    pub fn cmp_value(self, other: Number) -> Ordering {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

// Structural equality: a rational and a real are distinct even when numerically equal,
// so normalization stays deterministic about which representation it carries.
impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a == b,
            (Number::Real(a), Number::Real(b)) => a.total_cmp(b) == Ordering::Equal,
            _ => false,
        }
    }
}
impl Eq for Number {}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            // Debug formatting of f64 is the shortest representation that parses back
            // to the same bits.
            Number::Real(x) => write!(f, "{:?}", x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_stays_exact() {
        let half = Number::rational(1, 2);
        let two = Number::integer(2);
        assert!(half.mul(two).is_one());
        assert_eq!(half.add(half), Number::integer(1));
    }

    #[test]
    fn overflow_falls_back_to_real() {
        let big = Number::integer(i64::MAX / 2);
        match big.mul(Number::integer(4)) {
            Number::Real(x) => assert!(x > 1e18),
            Number::Rational(_) => panic!("expected real fallback"),
        }
    }

    #[test]
    fn integer_powers() {
        assert_eq!(Number::integer(2).powi(10), Number::integer(1024));
        assert_eq!(Number::integer(2).powi(-2), Number::rational(1, 4));
    }
}

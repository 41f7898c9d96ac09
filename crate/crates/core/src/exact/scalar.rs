use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::cyclo::{cyclo_invert, CycloNumber};
use super::rational::{parse_rational, render_rational, Rational};
use super::ring::{impl_ring_ops, Ring};
use crate::error::{Error, Result};

/// An exact scalar: a rational number or a non-rational element of some
/// `Q(ζ_n)`.
///
/// Values are kept normalized: a cyclotomic number whose non-constant
/// coefficients all vanish is always stored as `Rational`. Rationals embed
/// canonically into every `Q(ζ_n)`, so mixed arithmetic is allowed; two
/// cyclotomic operands must share the same order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Cyclo(CycloNumber),
}

impl Scalar {
    pub fn rational(r: Rational) -> Self {
        Scalar::Rational(r)
    }

    /// Normalized wrapper around a cyclotomic number.
    pub fn cyclo(c: CycloNumber) -> Self {
        match c.is_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclo(c),
        }
    }

    /// The primitive root `ζ_n = e^{2πi/n}` (rational for `n <= 2`).
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn zeta_pow(n: u32, k: i64) -> Self {
        Scalar::cyclo(CycloNumber::zeta_pow(n, k))
    }

    pub fn is_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclo(_) => None,
        }
    }

    /// Order of the cyclotomic field the value lives in (`None` for rationals).
    pub fn field_order(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclo(c) => Some(c.order()),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Cyclo(c) => cyclo_invert(c).map(Scalar::cyclo),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.inverse()?))
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow((-e) as u32))
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(r) => Value::String(render_rational(r)),
            Scalar::Cyclo(c) => json!({
                "order": c.order(),
                "coeffs": c.coeffs().iter().map(render_rational).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s).map(Scalar::Rational),
            Value::Number(n) => parse_rational(&n.to_string()).map(Scalar::Rational),
            Value::Object(map) => {
                let order = map
                    .get("order")
                    .and_then(Value::as_u64)
                    .filter(|&o| o >= 1)
                    .ok_or_else(|| Error::Parse("cyclotomic number needs a positive 'order'".into()))?;
                let coeffs = map
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("cyclotomic number needs 'coeffs'".into()))?
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => parse_rational(s),
                        other => parse_rational(&other.to_string()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scalar::cyclo(CycloNumber::new(order as u32, coeffs)))
            }
            other => Err(Error::Parse(format!("not a scalar: {other}"))),
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclo(a), Scalar::Rational(b)) | (Scalar::Rational(b), Scalar::Cyclo(a)) => {
                Scalar::Cyclo(a.add_rational(b))
            }
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::cyclo(a.add(b)),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Cyclo(a), Scalar::Rational(b)) => Scalar::Cyclo(a.add_rational(&-b)),
            (Scalar::Rational(a), Scalar::Cyclo(b)) => Scalar::Cyclo(b.neg().add_rational(a)),
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::cyclo(a.sub(b)),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclo(a), Scalar::Rational(b)) | (Scalar::Rational(b), Scalar::Cyclo(a)) => {
                if b.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Cyclo(a.scale(b))
                }
            }
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::cyclo(a.mul(b)),
        }
    }

    fn negated(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclo(a) => Scalar::Cyclo(a.neg()),
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = self.plus(rhs),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::Rational(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl_ring_ops!(Scalar);

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<CycloNumber> for Scalar {
    fn from(c: CycloNumber) -> Self {
        Scalar::cyclo(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", render_rational(r)),
            Scalar::Cyclo(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

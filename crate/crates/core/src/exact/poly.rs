//! Dense univariate polynomials over a [`Ring`].
//!
//! `TPoly` (polynomials in the interpolation parameter `t`) and `ZPoly`
//! (polynomials in `z` with `TPoly` coefficients) are both instances.

use std::fmt;

use serde_json::{Map, Value};

use super::rational::Rational;
use super::ring::{impl_ring_ops, Ring};
use super::scalar::Scalar;
use super::Render;
use crate::error::{Error, Result};

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type TPoly = Poly<Scalar>;
pub type ZPoly = Poly<TPoly>;

impl<C: Ring> Poly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(C::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · X^e`
    pub fn monomial(c: C, e: usize) -> Self {
        let mut coeffs = vec![C::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// `p(a + b·X)`.
    pub fn compose_affine(&self, a: &C, b: &C) -> Self {
        let lin = Poly::from_coeffs(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.times(&lin).plus(&Self::constant(c.clone())))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Exact division by `X^k`; `None` if a low coefficient is nonzero.
    pub fn div_x_pow(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Drops all terms of degree `>= n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }
}

impl TPoly {
    /// Substitutes `t ↦ 1 - t`.
    pub fn reflect(&self) -> Self {
        self.compose_affine(&Scalar::one(), &Scalar::from(-1))
    }

    /// Substitutes `t ↦ t + shift`.
    pub fn shift(&self, by: i64) -> Self {
        self.compose_affine(&Scalar::from(by), &Scalar::one())
    }

    pub fn eval_rational(&self, t: &Rational) -> Scalar {
        self.eval(&Scalar::from(t.clone()))
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
        while self.coeffs.last().is_some_and(C::is_zero) {
            self.coeffs.pop();
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_assign_ref(&a.times(b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    fn negated(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(C::negated).collect() }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    fn try_inverse(&self) -> Option<Self> {
        match self.coeffs.len() {
            1 => self.coeffs[0].try_inverse().map(Self::constant),
            _ => None,
        }
    }
}

impl_ring_ops!(generic Poly);

impl<C: Ring + Render> Render for Poly<C> {
    const LEVEL: usize = C::LEVEL + 1;

    fn to_json(&self) -> Value {
        let var = poly_var(C::LEVEL);
        let mut map = Map::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                map.insert(format!("{var}^{i}"), c.to_json());
            }
        }
        Value::Object(map)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let var = poly_var(C::LEVEL);
        let map = v.as_object().ok_or_else(|| Error::Parse(format!("expected {{\"{var}^e\": …}} object")))?;
        let mut coeffs: Vec<C> = Vec::new();
        for (key, val) in map {
            let e: usize = key
                .strip_prefix(var)
                .and_then(|s| s.strip_prefix('^'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent key '{key}'")))?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, C::zero());
            }
            coeffs[e].add_assign_ref(&C::from_json(val)?);
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Variable names by nesting depth: scalars sit under `t`, `t`-polynomials
/// under `z`.
fn poly_var(level: usize) -> &'static str {
    ["t", "z", "w"].get(level).copied().unwrap_or("w")
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

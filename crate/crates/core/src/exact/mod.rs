//! Exact arithmetic: rationals, cyclotomic numbers, polynomials and
//! truncated series.

mod cyclo;
mod poly;
mod rational;
mod ring;
mod scalar;
mod series;

use serde_json::Value;

pub use cyclo::{cyclo_invert, cyclotomic_polynomial, CycloField, CycloNumber};
pub use poly::{Poly, TPoly, ZPoly};
pub use rational::{binomial, binomial_q, factorial, int, parse_rational, rat, render_rational, Rational};
pub use ring::Ring;
pub use scalar::Scalar;
pub use series::{monomials_up_to, Monomial, Series, Vars};

use crate::error::Result;

/// JSON text form shared by every exact type.
pub trait Render: Sized {
    /// Nesting depth of polynomial layers (0 for scalars).
    const LEVEL: usize;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Render for Scalar {
    const LEVEL: usize = 0;

    fn to_json(&self) -> Value {
        Scalar::to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        Scalar::from_json(v)
    }
}

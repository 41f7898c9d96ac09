//! Arbitrary-precision rationals and small integer combinatorics.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `C(n, k)` for integer `n` (may be negative or smaller than `k`). Returns
/// zero whenever `k < 0` or `0 <= n < k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Renders `p/q`, or just `p` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    // U+2212 shows up when values are copied out of typeset documents.
    let cleaned = s.replace('\u{2212}', "-");
    match cleaned.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(&cleaned)
            .map(Rational::from_integer)
            .map_err(|_| Error::Parse(format!("bad rational '{s}'"))),
    }
}

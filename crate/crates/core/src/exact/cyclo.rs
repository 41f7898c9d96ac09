//! The cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored as coefficient vectors of length `φ(n)` in the power
//! basis `1, ζ, …, ζ^{φ(n)-1}`, always reduced modulo the `n`-th cyclotomic
//! polynomial. Reduction modulo `Φ_n` (rather than `x^n - 1`) makes the
//! representation unique, so equality and the rationality test are plain
//! coefficient comparisons.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{render_rational, Rational};
use crate::error::{Error, Result};

/// `Φ_n` as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    CycloField::get(n).modulus.clone()
}

fn build_cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = CycloField::get(d);
        poly = exact_div_monic(&poly, &divisor.modulus);
    }
    poly
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Context for `Q(ζ_n)`: the order and its defining polynomial.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    modulus: Vec<BigInt>,
}

impl CycloField {
    /// Shared, memoized field of order `n`.
    pub fn get(n: u32) -> Arc<CycloField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return f.clone();
        }
        // Built outside the lock: construction recurses into smaller orders.
        let field = Arc::new(CycloField { order: n, modulus: build_cyclotomic(n) });
        cache.lock().unwrap().entry(n).or_insert(field).clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(n)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_n`.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        for i in (d..coeffs.len()).rev() {
            if coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[i], Rational::zero());
            for (j, mj) in self.modulus[..d].iter().enumerate() {
                if !mj.is_zero() {
                    coeffs[i - d + j] -= &c * Rational::from_integer(mj.clone());
                }
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

/// An element of `Q(ζ_n)` in canonical reduced form.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    /// Reduces `Σ coeffs[i] ζ_n^i` (any length) into canonical form.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Self {
        Self::in_field(CycloField::get(order), coeffs)
    }

    fn in_field(field: Arc<CycloField>, coeffs: Vec<Rational>) -> Self {
        let coeffs = field.reduce(coeffs);
        CycloNumber { field, coeffs }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        Self::new(order, vec![r])
    }

    /// `ζ_n^k`. Exponents are taken modulo `n`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::new(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(value)` iff every non-constant coefficient vanishes.
    pub fn is_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "arithmetic between Q(zeta_{}) and Q(zeta_{})",
            self.order(),
            other.order()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::in_field(self.field.clone(), prod)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += r;
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        cyclo_invert(self)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
                0 => write!(f, "{}", render_rational(c))?,
                _ => write!(f, "({})*zeta{}^{}", render_rational(c), self.order(), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Dense univariate polynomials over Q, lowest degree first, used only by the
// inversion below.

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] * &lead_inv;
        for (j, dj) in den.iter().enumerate() {
            let delta = &c * dj;
            rem[i - dd + j] -= delta;
        }
        quot[i - dd] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul_sub(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // a - q*b
    let len = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// Multiplicative inverse in `Q(ζ_n)` by the extended Euclidean algorithm
/// against `Φ_n`.
pub fn cyclo_invert(a: &CycloNumber) -> Result<CycloNumber> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let modulus: Vec<Rational> = a.field.modulus.iter().cloned().map(Rational::from_integer).collect();
    let mut r0 = modulus;
    let mut r1 = a.coeffs.clone();
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_mul_sub(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // Φ_n is irreducible, so the gcd is a nonzero constant.
    debug_assert_eq!(r0.len(), 1);
    let g_inv = r0[0].recip();
    let coeffs = s0.into_iter().map(|c| c * &g_inv).collect();
    Ok(CycloNumber::in_field(a.field.clone(), coeffs))
}

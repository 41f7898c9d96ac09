//! Truncated sparse multivariate series, optionally Laurent in one variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use smallvec::SmallVec;

use super::ring::Ring;
use super::Render;
use crate::error::{Error, Result};

/// Ordered list of variable names shared by every series in one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// `prefix1, …, prefix{count}`
    pub fn numbered(prefix: &str, count: usize) -> Self {
        Vars((1..=count).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::VariableMismatch(format!("no variable '{name}' in {:?}", self.0)))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

/// Exponent vector. Ordered graded-lexicographically: lower total degree
/// first, then lexicographically larger exponent vectors first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[i32; 6]>);

impl Monomial {
    pub fn zero(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn from_slice(e: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut m = Self::zero(len);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent stays nonnegative.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a -= b;
            if *a < 0 {
                return None;
            }
        }
        Some(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

/// All exponent vectors in `len` variables with nonnegative entries and
/// total degree at most `cap`, in graded-lex order.
pub fn monomials_up_to(len: usize, cap: i32) -> Vec<Monomial> {
    fn rec(len: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if cur.len() == len {
            out.push(Monomial::from_slice(cur));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(len, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if cap >= 0 {
        rec(len, cap, &mut Vec::with_capacity(len), &mut out);
    }
    out.sort();
    out
}

/// Truncated series `Σ c_m · vars^m` keeping only terms of total degree
/// `<= cap`. At most one variable may carry negative exponents, bounded
/// below by the Laurent floor.
#[derive(Clone)]
pub struct Series<C> {
    vars: Vars,
    cap: i32,
    floor: Option<(usize, i32)>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Series<C> {
    pub fn zero(vars: &Vars, cap: i32) -> Self {
        Series { vars: vars.clone(), cap, floor: None, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, cap: i32, c: C) -> Self {
        let mut s = Self::zero(vars, cap);
        s.push(Monomial::zero(vars.len()), c);
        s
    }

    pub fn one(vars: &Vars, cap: i32) -> Self {
        Self::constant(vars, cap, C::one())
    }

    /// The variable `name` itself.
    pub fn var(vars: &Vars, cap: i32, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        let mut s = Self::zero(vars, cap);
        s.push(Monomial::unit(vars.len(), i), C::one());
        Ok(s)
    }

    pub fn var_at(vars: &Vars, cap: i32, i: usize) -> Self {
        let mut s = Self::zero(vars, cap);
        s.push(Monomial::unit(vars.len(), i), C::one());
        s
    }

    /// Single term; fails if it violates the floor.
    pub fn monomial(vars: &Vars, cap: i32, exps: &[i32], c: C) -> Self {
        let mut s = Self::zero(vars, cap);
        s.push(Monomial::from_slice(exps), c);
        s
    }

    /// Allows negative exponents of `var` down to `floor`.
    pub fn with_floor(mut self, var: &str, floor: i32) -> Result<Self> {
        let i = self.vars.require(var)?;
        self.floor = Some((i, floor));
        self.check_floor()?;
        Ok(self)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn floor(&self) -> Option<(usize, i32)> {
        self.floor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, exps: &[i32]) -> C {
        self.terms.get(&Monomial::from_slice(exps)).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.vars.len()])
    }

    /// Adds `c · m`, dropping it if it lies above the cap.
    fn push(&mut self, m: Monomial, c: C) {
        if c.is_zero() || m.degree() > self.cap {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds a term, honouring cap and floor.
    pub fn add_term(&mut self, exps: &[i32], c: C) -> Result<()> {
        let m = Monomial::from_slice(exps);
        self.check_monomial(&m)?;
        self.push(m, c);
        Ok(())
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        for (i, &e) in m.0.iter().enumerate() {
            if e < 0 {
                match self.floor {
                    Some((v, floor)) if v == i && e >= floor => {}
                    Some((v, floor)) if v == i => {
                        return Err(Error::FloorExceeded { var: self.vars.0[i].clone(), exponent: e, floor });
                    }
                    _ => {
                        return Err(Error::FloorExceeded { var: self.vars.0[i].clone(), exponent: e, floor: 0 });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_floor(&self) -> Result<()> {
        self.terms.keys().try_for_each(|m| self.check_monomial(m))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        Ok(())
    }

    fn merged_floor(&self, other: &Self) -> Option<(usize, i32)> {
        match (self.floor, other.floor) {
            (Some((i, a)), Some((_, b))) => Some((i, a.min(b))),
            (a, b) => a.or(b),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.check_ring(other).expect("series rings differ");
        let mut out = self.clone();
        out.cap = self.cap.min(other.cap);
        out.floor = self.merged_floor(other);
        if out.cap < self.cap {
            out.terms.retain(|m, _| m.degree() <= out.cap);
        }
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.map_coeffs(C::negated)
    }

    /// Product truncated at the smaller cap.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.vars, self.cap.min(other.cap));
        out.floor = self.merged_floor(other);
        // Lowest degree in `other`, used to skip hopeless pairs.
        let min_b = other.terms.keys().next().map(Monomial::degree);
        let Some(min_b) = min_b else { return Ok(out) };
        for (ma, ca) in &self.terms {
            if ma.degree() + min_b > out.cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if m.degree() > out.cap {
                    continue;
                }
                out.check_monomial(&m)?;
                out.push(m, ca.times(cb));
            }
        }
        Ok(out)
    }

    /// Product for series known to stay inside the floor.
    pub fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series product left the Laurent floor")
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        out.floor = self.floor;
        for (m, a) in &self.terms {
            out.push(m.clone(), a.times(c));
        }
        out
    }

    /// Multiplies by `c · vars^exps`.
    pub fn mul_monomial(&self, exps: &[i32], c: &C) -> Result<Self> {
        let shift = Monomial::from_slice(exps);
        let mut out = Self::zero(&self.vars, self.cap);
        out.floor = self.floor;
        for (m, a) in &self.terms {
            let m = m.mul(&shift);
            out.check_monomial(&m)?;
            out.push(m, a.times(c));
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.vars, self.cap);
        acc.floor = self.floor;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Drops terms of degree above `cap` and lowers the cap.
    pub fn truncate(&self, cap: i32) -> Self {
        let mut out = self.clone();
        out.cap = cap.min(self.cap);
        out.terms.retain(|m, _| m.degree() <= out.cap);
        out
    }

    /// Same terms under a larger or smaller nominal cap. Raising the cap
    /// does not invent precision; the caller vouches for it.
    pub fn with_cap(&self, cap: i32) -> Self {
        let mut out = self.truncate(cap);
        out.cap = cap;
        out
    }

    /// Multiplicative inverse up to the cap, by graded coefficient
    /// recursion. Requires no negative exponents and a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        if self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0)) {
            return Err(Error::NonUnitConstantTerm);
        }
        let c0 = self.constant_term();
        let inv0 = c0.try_inverse().ok_or(Error::NonUnitConstantTerm)?;
        let rest: Vec<(&Monomial, &C)> = self.terms.iter().filter(|(m, _)| !m.is_constant()).collect();
        let mut out: HashMap<Monomial, C> = HashMap::new();
        let mut result = Self::zero(&self.vars, self.cap);
        result.floor = self.floor;
        for m in monomials_up_to(self.vars.len(), self.cap) {
            let value = if m.is_constant() {
                inv0.clone()
            } else {
                let mut acc = C::zero();
                for (ms, cs) in &rest {
                    if let Some(q) = m.checked_div(ms) {
                        if let Some(b) = out.get(&q) {
                            acc.add_assign_ref(&cs.times(b));
                        }
                    }
                }
                acc.times(&inv0).negated()
            };
            if !value.is_zero() {
                result.push(m.clone(), value.clone());
                out.insert(m, value);
            }
        }
        Ok(result)
    }

    /// Inverse of a series whose terms all carry `var^a` for the lowest
    /// exponent `a` of `var` and whose quotient by `var^a` is invertible.
    /// The result is Laurent in `var` with floor `min(floor, -a)`.
    pub fn invert_laurent(&self, var: usize) -> Result<Self> {
        let a = self.terms.keys().map(|m| m.0[var]).min().ok_or(Error::NonUnitConstantTerm)?;
        let mut shift = vec![0; self.vars.len()];
        shift[var] = -a;
        let mut unit = self.clone();
        unit.floor = None;
        unit.terms = self.terms.iter().map(|(m, c)| (m.mul(&Monomial::from_slice(&shift)), c.clone())).collect();
        // Shifting by x^{-a} moves the cap too.
        unit.cap = self.cap - a;
        let inv = unit.invert()?;
        let floor = self.floor.map_or(-a, |(_, f)| f.min(-a));
        let mut out = Self::zero(&self.vars, self.cap);
        out.floor = Some((var, floor));
        for (m, c) in inv.terms {
            let m = m.mul(&Monomial::from_slice(&shift));
            out.check_monomial(&m)?;
            out.push(m, c);
        }
        Ok(out)
    }

    /// Errors if any exponent is negative.
    pub fn assert_no_negative_exponents(&self) -> Result<()> {
        for m in self.terms.keys() {
            if let Some(i) = m.0.iter().position(|&e| e < 0) {
                return Err(Error::NegativeExponentSurvived { var: self.vars.0[i].clone(), monomial: m.0.to_vec() });
            }
        }
        Ok(())
    }

    /// Drops the Laurent floor after checking nothing negative is left.
    pub fn into_power_series(mut self) -> Result<Self> {
        self.assert_no_negative_exponents()?;
        self.floor = None;
        Ok(self)
    }

    /// Replaces variables by series in the ring of `target`. Variables
    /// without a binding are mapped to the variable of the same name in the
    /// target ring. Negative powers invert the binding as a Laurent series.
    pub fn substitute(&self, bindings: &[(&str, &Series<C>)], target: &Series<C>) -> Result<Series<C>> {
        let n = self.vars.len();
        let mut images: Vec<Series<C>> = Vec::with_capacity(n);
        for name in self.vars.names() {
            match bindings.iter().find(|(b, _)| b == name) {
                Some((_, s)) => {
                    target.check_ring(s)?;
                    images.push((*s).clone());
                }
                None => {
                    let i = target.vars.require(name)?;
                    images.push(Series::var_at(&target.vars, target.cap, i));
                }
            }
        }
        let mut out = Series::zero(&target.vars, target.cap);
        out.floor = target.floor;
        let mut cache: HashMap<(usize, i32), Series<C>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Series::constant(&target.vars, target.cap, c.clone());
            term.floor = target.floor;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match cache.get(&(i, e)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = if e > 0 {
                            images[i].pow(e as u32)?
                        } else {
                            let (lv, _) = target.floor.ok_or(Error::FloorExceeded {
                                var: self.vars.0[i].clone(),
                                exponent: e,
                                floor: 0,
                            })?;
                            images[i].invert_laurent(lv)?.pow((-e) as u32)?
                        };
                        cache.insert((i, e), f.clone());
                        f
                    }
                };
                term = term.try_mul(&factor)?;
            }
            out = out.plus(&term);
        }
        out.floor = target.floor;
        out.check_floor()?;
        Ok(out)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(&self.vars, self.cap);
        out.floor = self.floor;
        for (m, c) in &self.terms {
            out.push(m.clone(), f(c));
        }
        out
    }

    /// Fallible coefficient map.
    pub fn try_map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        let mut out = Series::zero(&self.vars, self.cap);
        out.floor = self.floor;
        for (m, c) in &self.terms {
            out.push(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Substitutes `var = 0`: keeps only terms free of `var`.
    pub fn at_zero(&self, var: &str) -> Result<Self> {
        let i = self.vars.require(var)?;
        let mut out = self.clone();
        if let Some(m) = out.terms.keys().find(|m| m.0[i] < 0) {
            return Err(Error::NegativeExponentSurvived { var: var.to_string(), monomial: m.0.to_vec() });
        }
        out.terms.retain(|m, _| m.0[i] == 0);
        Ok(out)
    }

    /// Substitutes `var ↦ c · var`.
    pub fn scale_var(&self, var: &str, c: &C) -> Result<Self> {
        let i = self.vars.require(var)?;
        let inv = c.try_inverse();
        let mut out = Self::zero(&self.vars, self.cap);
        out.floor = self.floor;
        for (m, a) in &self.terms {
            let e = m.0[i];
            let f = if e >= 0 { c.pow(e as u32) } else { inv.clone().ok_or(Error::DivisionByZero)?.pow((-e) as u32) };
            out.push(m.clone(), a.times(&f));
        }
        Ok(out)
    }

    /// First monomial (in graded order) where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Monomial, C, C)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let a = self.terms.get(m).cloned().unwrap_or_else(C::zero);
            let b = other.terms.get(m).cloned().unwrap_or_else(C::zero);
            (a != b).then(|| (m.clone(), a, b))
        })
    }
}

impl<C: Ring> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Ring + Render> Series<C> {
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(m, c)| json!({"exps": m.0.to_vec(), "coeff": c.to_json()})).collect())
    }

    pub fn from_json(vars: &Vars, cap: i32, v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| Error::Parse("series must be a JSON array".into()))?;
        let mut out = Self::zero(vars, cap);
        for item in items {
            let exps: Vec<i32> = item
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("series term needs 'exps'".into()))?
                .iter()
                .map(|e| e.as_i64().map(|e| e as i32).ok_or_else(|| Error::Parse(format!("bad exponent {e}"))))
                .collect::<Result<_>>()?;
            if exps.len() != vars.len() {
                return Err(Error::Parse(format!("expected {} exponents, got {}", vars.len(), exps.len())));
            }
            let coeff =
                C::from_json(item.get("coeff").ok_or_else(|| Error::Parse("series term needs 'coeff'".into()))?)?;
            let m = Monomial(exps.into());
            if let Some(i) = m.0.iter().position(|&e| e < 0) {
                let floor = out.floor.map_or(m.0[i], |(_, f)| f.min(m.0[i]));
                out.floor = Some((i, floor));
            }
            out.check_monomial(&m)?;
            out.push(m, coeff);
        }
        Ok(out)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars.0[i])?,
                    _ => write!(f, "*{}^{}", self.vars.0[i], e)?,
                }
            }
        }
        write!(f, " + O(deg {})", self.cap + 1)
    }
}

impl<C: Ring> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Scalar, TPoly};

    type S = Series<TPoly>;

    fn c(v: i64) -> TPoly {
        TPoly::from_int(v)
    }

    #[test]
    fn graded_order() {
        let ms = monomials_up_to(2, 2);
        let e: Vec<Vec<i32>> = ms.iter().map(|m| m.0.to_vec()).collect();
        assert_eq!(e, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn geometric_inverse() {
        let v = Vars::new(&["u"]);
        let s = S::one(&v, 5).minus(&S::var(&v, 5, "u").unwrap());
        let inv = s.invert().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coefficient(&[k]), c(1));
        }
        assert_eq!(inv.len(), 6);
        assert_eq!(S::one(&v, 3).invert().unwrap(), S::one(&v, 3));
    }

    #[test]
    fn square_inverse() {
        let v = Vars::new(&["u1"]);
        let s = S::one(&v, 3).plus(&S::var(&v, 3, "u1").unwrap()).pow(2).unwrap();
        let inv = s.invert().unwrap();
        let want: Vec<TPoly> = [1, -2, 3, -4].iter().map(|&x| c(x)).collect();
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&inv.coefficient(&[k as i32]), w);
        }
    }

    #[test]
    fn non_unit_constant() {
        let v = Vars::new(&["u"]);
        let s = S::var(&v, 3, "u").unwrap();
        assert_eq!(s.invert(), Err(Error::NonUnitConstantTerm));
        let t = S::constant(&v, 3, TPoly::x());
        assert_eq!(t.invert(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn substitute_geometric() {
        let xv = Vars::new(&["x1"]);
        let uv = Vars::new(&["u1"]);
        let x1 = S::var(&xv, 3, "x1").unwrap();
        let u1 = S::var(&uv, 3, "u1").unwrap();
        let img = u1.times(&S::one(&uv, 3).plus(&u1).invert().unwrap());
        let target = S::zero(&uv, 3);
        let got = x1.substitute(&[("x1", &img)], &target).unwrap();
        assert_eq!(got.coefficient(&[1]), c(1));
        assert_eq!(got.coefficient(&[2]), c(-1));
        assert_eq!(got.coefficient(&[3]), c(1));
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn laurent_inverse_and_floor() {
        let v = Vars::new(&["u1", "u2"]);
        let u1 = S::var(&v, 4, "u1").unwrap();
        let x1 = u1.times(&S::one(&v, 4).plus(&u1).invert().unwrap());
        // 1/x1 = u1^{-1} + 1 exactly.
        let inv = x1.invert_laurent(0).unwrap();
        assert_eq!(inv.coefficient(&[-1, 0]), c(1));
        assert_eq!(inv.coefficient(&[0, 0]), c(1));
        assert_eq!(inv.len(), 2);
        let m = S::monomial(&v, 4, &[0, 1], c(1)).with_floor("u1", -1).unwrap();
        assert!(matches!(m.mul_monomial(&[-2, 0], &c(1)), Err(Error::FloorExceeded { .. })));
        let bad = m.mul_monomial(&[-1, 0], &c(1)).unwrap();
        assert!(matches!(bad.assert_no_negative_exponents(), Err(Error::NegativeExponentSurvived { .. })));
    }

    #[test]
    fn scale_var_and_json() {
        let v = Vars::new(&["a", "b"]);
        let s = S::monomial(&v, 3, &[1, 1], c(2)).plus(&S::monomial(&v, 3, &[0, 3], c(1)));
        let flipped = s.scale_var("b", &c(-1)).unwrap();
        assert_eq!(flipped.coefficient(&[1, 1]), c(-2));
        assert_eq!(flipped.coefficient(&[0, 3]), c(-1));
        let js = s.to_json();
        assert_eq!(js[0]["exps"], json!([1, 1]));
        assert_eq!(S::from_json(&v, 3, &js).unwrap(), s);
        let half = TPoly::constant(Scalar::from(rat(1, 2)));
        assert_eq!(s.scale(&half).coefficient(&[1, 1]), c(1));
    }
}

//! Literal nested-sum evaluation of the finite multiple harmonic q-series,
//! their interpolations, the finite q-polylogarithms and `Θ_q`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Ring, Scalar, TPoly, ZPoly};
use crate::indices::{enumerate_indices, enumerate_patterns, Alphabet, HeightProfile, MultiIndex};

/// The field `q` lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Cyclotomic(u32),
}

/// Upper bound `n` and the point `q`, with `q^m != 1` for `1 <= m < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesParams {
    n: u32,
    q: Scalar,
}

impl SeriesParams {
    pub fn new(n: u32, q: Scalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        let mut pow = Scalar::one();
        for m in 1..n {
            pow = pow.times(&q);
            if pow.is_one() {
                return Err(Error::InvalidQ { n, m });
            }
        }
        Ok(SeriesParams { n, q })
    }

    /// `q = ζ_n`.
    pub fn zeta(n: u32) -> Result<Self> {
        Self::new(n, Scalar::zeta(n))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn kind(&self) -> FieldKind {
        match self.q.field_order() {
            Some(o) => FieldKind::Cyclotomic(o),
            None => FieldKind::Rational,
        }
    }
}

/// Parses `zeta`, `zeta^k` (powers of `ζ_n`) or an exact rational.
pub fn parse_q(spec: &str, n: u32) -> Result<Scalar> {
    let s = spec.trim();
    if s == "zeta" {
        return Ok(Scalar::zeta(n));
    }
    if let Some(k) = s.strip_prefix("zeta^") {
        let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad root power in '{s}'")))?;
        return Ok(Scalar::zeta_pow(n, k));
    }
    parse_rational(s).map(Scalar::from)
}

/// Which nested sum to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Flavor {
    /// `(1-q^m)` denominators, strict inequalities.
    Bar,
    BarStar,
    /// `[m]` denominators.
    Plain,
    PlainStar,
}

impl Flavor {
    fn star(self) -> bool {
        matches!(self, Flavor::BarStar | Flavor::PlainStar)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LVariant {
    Plain,
    Star,
    Interp,
}

type Memo<K, V> = Mutex<HashMap<K, V>>;

/// Evaluator for fixed `(n, q)` with a memo of scalar values.
pub struct Evaluator {
    params: SeriesParams,
    /// `q^m` for `0 <= m < n`.
    qpow: Vec<Scalar>,
    /// `1/(1-q^m)`, index 0 unused.
    inv_bar: Vec<Scalar>,
    /// `1/[m]`, index 0 unused.
    inv_plain: Vec<Scalar>,
    memo: Option<Memo<(Flavor, Vec<u32>), Scalar>>,
    lmemo: Option<Memo<(bool, Vec<u32>), ZPoly>>,
}

impl Evaluator {
    pub fn new(params: SeriesParams) -> Self {
        Self::build(params, true)
    }

    /// Same evaluator without memoization.
    pub fn uncached(params: SeriesParams) -> Self {
        Self::build(params, false)
    }

    fn build(params: SeriesParams, memo: bool) -> Self {
        let n = params.n as usize;
        let q = params.q.clone();
        let mut qpow = Vec::with_capacity(n);
        let mut acc = Scalar::one();
        for _ in 0..n {
            qpow.push(acc.clone());
            acc = acc.times(&q);
        }
        let mut inv_bar = vec![Scalar::zero()];
        let mut inv_plain = vec![Scalar::zero()];
        let mut bracket = Scalar::zero();
        for m in 1..n {
            // Both are nonzero since q^m != 1 was checked.
            inv_bar.push(Scalar::one().minus(&qpow[m]).inverse().expect("q^m = 1"));
            bracket = bracket.plus(&qpow[m - 1]);
            inv_plain.push(bracket.inverse().expect("[m] = 0"));
        }
        Evaluator {
            params,
            qpow,
            inv_bar,
            inv_plain,
            memo: memo.then(|| Mutex::new(HashMap::new())),
            lmemo: memo.then(|| Mutex::new(HashMap::new())),
        }
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn q(&self) -> &Scalar {
        &self.params.q
    }

    /// `q^m` for any integer `m`.
    pub fn q_pow(&self, m: i64) -> Result<Scalar> {
        if (0..self.qpow.len() as i64).contains(&m) {
            return Ok(self.qpow[m as usize].clone());
        }
        self.params.q.powi(m)
    }

    /// Summand `q^{(k-1)m} / D(m)^k` of a depth-one sum.
    fn term(&self, flavor: Flavor, k: u32, m: usize) -> Result<Scalar> {
        let inv = match flavor {
            Flavor::Bar | Flavor::BarStar => &self.inv_bar[m],
            Flavor::Plain | Flavor::PlainStar => &self.inv_plain[m],
        };
        let num = self.q_pow((k as i64 - 1) * m as i64)?;
        Ok(num.times(&inv.pow(k)))
    }

    fn nested(&self, flavor: Flavor, k: &[u32]) -> Result<Scalar> {
        if k.is_empty() {
            return Ok(Scalar::one());
        }
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.lock().unwrap().get(&(flavor, k.to_vec())) {
                return Ok(v.clone());
            }
        }
        let n = self.params.n as usize;
        // a[m] = Σ over m = m_i > m_{i+1} > … of the inner terms.
        let mut a: Vec<Scalar> = vec![Scalar::zero(); n];
        for (m, slot) in a.iter_mut().enumerate().skip(1) {
            *slot = self.term(flavor, *k.last().unwrap(), m)?;
        }
        for &ki in k[..k.len() - 1].iter().rev() {
            let mut next = vec![Scalar::zero(); n];
            let mut prefix = Scalar::zero();
            for m in 1..n {
                if flavor.star() {
                    prefix.add_assign_ref(&a[m]);
                }
                if !prefix.is_zero() {
                    next[m] = self.term(flavor, ki, m)?.times(&prefix);
                }
                if !flavor.star() {
                    prefix.add_assign_ref(&a[m]);
                }
            }
            a = next;
        }
        let mut total = Scalar::zero();
        for v in &a[1..] {
            total.add_assign_ref(v);
        }
        if let Some(memo) = &self.memo {
            memo.lock().unwrap().insert((flavor, k.to_vec()), total.clone());
        }
        Ok(total)
    }

    /// `z̄_n(k; q)`. The flat index `(0)` gives `Σ q^{-m}`.
    pub fn zbar(&self, k: &MultiIndex) -> Result<Scalar> {
        self.nested(Flavor::Bar, k.parts())
    }

    pub fn zbar_star(&self, k: &MultiIndex) -> Result<Scalar> {
        self.nested(Flavor::BarStar, k.parts())
    }

    pub fn z(&self, k: &MultiIndex) -> Result<Scalar> {
        self.nested(Flavor::Plain, k.parts())
    }

    pub fn z_star(&self, k: &MultiIndex) -> Result<Scalar> {
        self.nested(Flavor::PlainStar, k.parts())
    }

    /// `Σ_p z̄_n(p) t^{l - dep p}` over three-letter fillings.
    pub fn zbar_t(&self, k: &MultiIndex) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for (p, e) in enumerate_patterns(k, Alphabet::Three).entries {
            out.add_assign_ref(&TPoly::monomial(self.zbar(&p)?, e as usize));
        }
        Ok(out)
    }

    /// `Σ_p (1-q)^{wt k - wt p} z_n(p) t^{l - dep p}`.
    pub fn z_t(&self, k: &MultiIndex) -> Result<TPoly> {
        let one_minus_q = Scalar::one().minus(self.q());
        let mut out = TPoly::zero();
        for (p, e) in enumerate_patterns(k, Alphabet::Three).entries {
            let w = one_minus_q.pow(k.weight() - p.weight());
            out.add_assign_ref(&TPoly::monomial(self.z(&p)?.times(&w), e as usize));
        }
        Ok(out)
    }

    /// `G_n^t(k, l, h; q)`: sum of `z̄^t` over the index set.
    pub fn g_sum(&self, profile: &HeightProfile) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for k in enumerate_indices(profile) {
            out.add_assign_ref(&self.zbar_t(&k)?);
        }
        Ok(out)
    }

    fn l_nested(&self, star: bool, k: &[u32]) -> ZPoly {
        if k.is_empty() {
            return ZPoly::one();
        }
        if let Some(memo) = &self.lmemo {
            if let Some(v) = memo.lock().unwrap().get(&(star, k.to_vec())) {
                return v.clone();
            }
        }
        let n = self.params.n as usize;
        let inv_pow = |k: u32, m: usize| self.inv_bar[m].pow(k);
        let mut a: Vec<Scalar> =
            (0..n).map(|m| if m == 0 { Scalar::zero() } else { inv_pow(*k.last().unwrap(), m) }).collect();
        for &ki in k[..k.len() - 1].iter().rev() {
            let mut next = vec![Scalar::zero(); n];
            let mut prefix = Scalar::zero();
            for m in 1..n {
                if star {
                    prefix.add_assign_ref(&a[m]);
                }
                next[m] = inv_pow(ki, m).times(&prefix);
                if !star {
                    prefix.add_assign_ref(&a[m]);
                }
            }
            a = next;
        }
        let out = ZPoly::from_coeffs(a.into_iter().map(TPoly::constant).collect());
        if let Some(memo) = &self.lmemo {
            memo.lock().unwrap().insert((star, k.to_vec()), out.clone());
        }
        out
    }

    /// `L_{n,k}(z; q)`, its star version, or the two-letter interpolation.
    pub fn l_poly(&self, k: &MultiIndex, variant: LVariant) -> ZPoly {
        match variant {
            LVariant::Plain => self.l_nested(false, k.parts()),
            LVariant::Star => self.l_nested(true, k.parts()),
            LVariant::Interp => {
                let mut out = ZPoly::zero();
                for (p, e) in enumerate_patterns(k, Alphabet::Two).entries {
                    let t_e = TPoly::monomial(Scalar::one(), e as usize);
                    let lp = self.l_nested(false, p.parts());
                    out.add_assign_ref(&lp.map(|c| c.times(&t_e)));
                }
                out
            }
        }
    }

    /// `X^t_{n,j}(k, l, h; z; q)`.
    pub fn x_sum(&self, profile: &HeightProfile) -> ZPoly {
        let mut out = ZPoly::zero();
        for k in enumerate_indices(profile) {
            out.add_assign_ref(&self.l_poly(&k, LVariant::Interp));
        }
        out
    }

    /// `Θ_q` with this evaluator's `q`.
    pub fn theta(&self, f: &ZPoly) -> ZPoly {
        theta_q(f, self.q())
    }
}

/// `(Θ_q f)(z) = f(z) - f(qz)`: scales the `z^i` coefficient by `1 - q^i`.
pub fn theta_q(f: &ZPoly, q: &Scalar) -> ZPoly {
    let mut pow = Scalar::one();
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        out.push(c.scale(&Scalar::one().minus(&pow)));
        pow = pow.times(q);
    }
    ZPoly::from_coeffs(out)
}

/// `z_n^t(k; e^{2πi/n})` in double precision, two-letter fillings.
pub fn z_t_float(k: &MultiIndex, n: u32, t: f64) -> Complex64 {
    let q = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let nn = n as usize;
    let qpow: Vec<Complex64> = (0..nn).map(|m| q.powu(m as u32)).collect();
    let bracket: Vec<Complex64> =
        (0..nn).map(|m| (Complex64::new(1.0, 0.0) - qpow[m]) / (Complex64::new(1.0, 0.0) - q)).collect();
    let term = |k: u32, m: usize| q.powi((k as i32 - 1) * m as i32) / bracket[m].powu(k);
    let nested = |p: &[u32]| -> Complex64 {
        if p.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        let mut a: Vec<Complex64> =
            (0..nn).map(|m| if m == 0 { Complex64::default() } else { term(*p.last().unwrap(), m) }).collect();
        for &ki in p[..p.len() - 1].iter().rev() {
            let mut next = vec![Complex64::default(); nn];
            let mut prefix = Complex64::default();
            for m in 1..nn {
                next[m] = term(ki, m) * prefix;
                prefix += a[m];
            }
            a = next;
        }
        a[1..].iter().sum()
    };
    enumerate_patterns(k, Alphabet::Two).entries.iter().map(|(p, e)| nested(p.parts()) * t.powi(*e as i32)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn ev(n: u32) -> Evaluator {
        Evaluator::new(SeriesParams::zeta(n).unwrap())
    }

    fn r(p: i64, q: i64) -> Scalar {
        Scalar::from(rat(p, q))
    }

    #[test]
    fn depth_one_values() {
        let half = Evaluator::new(SeriesParams::new(2, r(1, 2)).unwrap());
        assert_eq!(half.zbar(&mi("1")).unwrap(), r(2, 1));
        let e3 = ev(3);
        assert_eq!(e3.zbar(&mi("1")).unwrap(), r(1, 1));
        assert_eq!(e3.zbar(&mi("2")).unwrap(), r(-2, 3));
        assert_eq!(e3.zbar(&MultiIndex::from_raw(vec![0])).unwrap(), r(-1, 1));
        assert_eq!(e3.zbar_star(&mi("1,1")).unwrap(), r(2, 3));
        assert_eq!(half.z(&mi("1")).unwrap(), r(1, 1));
    }

    #[test]
    fn interpolations() {
        let e3 = ev(3);
        let want = TPoly::from_coeffs(vec![r(1, 3), r(1, 3)]);
        assert_eq!(e3.zbar_t(&mi("1,1")).unwrap(), want);
        let g = e3.g_sum(&HeightProfile::new(2, 2, vec![0], -1).unwrap()).unwrap();
        assert_eq!(g, want);
        let g = e3.g_sum(&HeightProfile::new(2, 1, vec![1], -1).unwrap()).unwrap();
        assert_eq!(g, TPoly::constant(r(-2, 3)));
        let g = e3.g_sum(&HeightProfile::new(0, 0, vec![0], -1).unwrap()).unwrap();
        assert_eq!(g, TPoly::one());
    }

    #[test]
    fn invalid_q() {
        assert_eq!(SeriesParams::new(3, r(-1, 1)), Err(Error::InvalidQ { n: 3, m: 2 }));
        assert_eq!(SeriesParams::new(2, r(1, 1)), Err(Error::InvalidQ { n: 2, m: 1 }));
        assert!(SeriesParams::new(2, r(-1, 1)).is_ok());
        assert_eq!(SeriesParams::new(5, Scalar::zeta(4)), Err(Error::InvalidQ { n: 5, m: 4 }));
        assert!(SeriesParams::new(4, Scalar::zeta_pow(4, 3)).is_ok());
    }

    #[test]
    fn l_polys_and_theta() {
        let half = Evaluator::new(SeriesParams::new(2, r(1, 2)).unwrap());
        // L_{2,(1)} = z/(1-q) = 2z
        let l = half.l_poly(&mi("1"), LVariant::Plain);
        assert_eq!(l, ZPoly::monomial(TPoly::constant(r(2, 1)), 1));
        let e4 = ev(4);
        assert_eq!(e4.theta(&e4.l_poly(&mi("2"), LVariant::Plain)), e4.l_poly(&mi("1"), LVariant::Plain));
        assert_eq!(e4.theta(&ZPoly::one()), ZPoly::zero());
        let e3 = ev(3);
        let x = e3.x_sum(&HeightProfile::new(2, 1, vec![1], 0).unwrap());
        assert_eq!(x, e3.l_poly(&mi("2"), LVariant::Plain));
        assert_eq!(e3.x_sum(&HeightProfile::new(0, 0, vec![0], -1).unwrap()), ZPoly::one());
    }

    #[test]
    fn float_limit_depth_one() {
        let v = z_t_float(&mi("1"), 1000, 0.0);
        let target = Complex64::new(0.0, -std::f64::consts::PI);
        assert!((v - target).norm() / target.norm() < 0.02, "{v}");
        assert_eq!(z_t_float(&mi("2"), 50, 0.3), z_t_float(&mi("2"), 50, 0.9));
    }

    #[test]
    fn parse_q_forms() {
        assert_eq!(parse_q("zeta", 3).unwrap(), Scalar::zeta(3));
        assert_eq!(parse_q("zeta^2", 3).unwrap(), Scalar::zeta_pow(3, 2));
        assert_eq!(parse_q("1/2", 3).unwrap(), r(1, 2));
        assert!(parse_q("0.5", 3).is_err());
    }
}

//! Truncated basic hypergeometric series and the `₃φ₂` form of `Φ_0`
//! at a rational point where both quadratics `P^t`, `P^{t-1}` split.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, Ring, Scalar};
use crate::qseries::Evaluator;

/// `Σ_{i=0}^{trunc} (a_1, …; q)_i / (q, b_1, …; q)_i · arg^i`.
pub fn qhs_truncated(upper: &[Scalar], lower: &[Scalar], q: &Scalar, arg: &Scalar, trunc: usize) -> Result<Scalar> {
    let mut total = Scalar::one();
    let mut term = Scalar::one();
    let mut qk = Scalar::one(); // q^{i-1}
    for i in 1..=trunc {
        let mut num = arg.clone();
        for a in upper {
            num = num.times(&Scalar::one().minus(&a.times(&qk)));
        }
        let mut den = Scalar::one().minus(&qk.times(q));
        for b in lower {
            den = den.times(&Scalar::one().minus(&b.times(&qk)));
        }
        if den.is_zero() {
            return Err(Error::ZeroPochhammerDenominator(i));
        }
        term = term.times(&num).div(&den)?;
        total = total.plus(&term);
        qk = qk.times(q);
    }
    Ok(total)
}

/// Rational point `(x_1, x_2, x_3, t)` for the `r = 1` representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x1: Rational,
    pub x2: Rational,
    pub x3: Rational,
    pub t: Rational,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// First witness of the bounded search, kept as a fixture.
pub fn pinned_witness() -> Witness {
    Witness { x1: r(-1, 1), x2: r(-1, 1), x3: r(4, 49), t: r(2, 1) }
}

fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let (n, d) = (v.numer(), v.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Roots `-α_1, -α_2` of `T^2 - (x_1 + τ x_2) T - τ (x_3 - x_1 x_2)`, if rational.
fn alphas(w: &Witness, tau: &Rational) -> Option<[Rational; 2]> {
    let b = &w.x1 + tau * &w.x2;
    let disc = &b * &b + Rational::from_integer(4.into()) * tau * (&w.x3 - &w.x1 * &w.x2);
    let s = rational_sqrt(&disc)?;
    let two = Rational::from_integer(2.into());
    Some([-(&b + &s) / &two, -(&b - &s) / &two])
}

fn usable(w: &Witness) -> bool {
    if w.x1.is_zero() || w.x2.is_zero() || w.x3.is_zero() || w.x3 == &w.x1 * &w.x2 {
        return false;
    }
    let t1 = &w.t - Rational::from_integer(1.into());
    match (alphas(w, &w.t), alphas(w, &t1)) {
        (Some(a), Some(b)) => a.iter().chain(b.iter()).all(|x| *x != r(-1, 1)),
        _ => false,
    }
}

fn small_rationals(num: i64, den: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for d in 1..=den {
        for n in -num..=num {
            let v = r(n, d);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out.sort_by(|a, b| (a.numer().abs() + a.denom()).cmp(&(b.numer().abs() + b.denom())).then(a.cmp(b)));
    out
}

/// Scans `x_1, x_2` with numerator and denominator at most 8, `t ∈ {2, 3, 1/2}`,
/// and `s` with denominator at most 12; `x_3` is solved so that the
/// `t`-discriminant is `s^2`, then the `(t-1)`-discriminant must be a square.
pub fn search_witness() -> Option<Witness> {
    let xs = small_rationals(8, 8);
    let ss = small_rationals(24, 12);
    let four = Rational::from_integer(4.into());
    for t in [r(2, 1), r(3, 1), r(1, 2)] {
        for x1 in &xs {
            for x2 in &xs {
                let b = x1 + &t * x2;
                for s in &ss {
                    if s.is_negative() {
                        continue;
                    }
                    let x3 = x1 * x2 + (s * s - &b * &b) / (&four * &t);
                    let w = Witness { x1: x1.clone(), x2: x2.clone(), x3, t: t.clone() };
                    if usable(&w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Both sides of the representation: `c_1, …, c_{n-1}` from the product
/// formula, and the same coefficients read off the `₃φ₂`.
pub fn qhs_sides(ev: &Evaluator, w: &Witness) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let q = ev.q().clone();
    let n = ev.n() as usize;
    let t1 = &w.t - Rational::from_integer(1.into());
    let p_at = |tau: &Rational, big_t: &Scalar| -> Scalar {
        let b = Scalar::from(&w.x1 + tau * &w.x2);
        let c = Scalar::from(tau * (&w.x3 - &w.x1 * &w.x2));
        big_t.times(big_t).minus(&b.times(big_t)).minus(&c)
    };
    let x3 = Scalar::from(w.x3.clone());
    let mut lhs = Vec::with_capacity(n - 1);
    let mut acc = x3.clone();
    for i in 1..n {
        let qi = Scalar::one().minus(&ev.q_pow(i as i64)?);
        if i > 1 {
            let qp = Scalar::one().minus(&ev.q_pow(i as i64 - 1)?);
            acc = acc.times(&p_at(&t1, &qp));
        }
        acc = acc.div(&p_at(&w.t, &qi))?;
        lhs.push(acc.clone());
    }
    let at = alphas(w, &w.t).ok_or_else(|| Error::InvalidParams("P^t does not split".into()))?;
    let at1 = alphas(w, &t1).ok_or_else(|| Error::InvalidParams("P^{t-1} does not split".into()))?;
    let a_of = |alpha: &Rational| q.div(&Scalar::from(Rational::from_integer(1.into()) + alpha));
    let a_t: Vec<Scalar> = at.iter().map(a_of).collect::<Result<_>>()?;
    let a_t1: Vec<Scalar> = at1.iter().map(a_of).collect::<Result<_>>()?;
    let ratio = a_t[0].times(&a_t[1]).div(&a_t1[0].times(&a_t1[1]))?;
    let upper = vec![q.clone(), a_t1[0].clone(), a_t1[1].clone()];
    let lower = vec![q.times(&a_t[0]), q.times(&a_t[1])];
    let lead = x3.div(&p_at(&w.t, &Scalar::one().minus(&q)))?;
    let mut rhs = Vec::with_capacity(n - 1);
    // The coefficient of z^{i+1} is the i-th partial increment.
    let mut prev = Scalar::zero();
    for i in 0..n - 1 {
        let s = qhs_truncated(&upper, &lower, &q, &ratio, i)?;
        rhs.push(lead.times(&s.minus(&prev)));
        prev = s;
    }
    Ok((lhs, rhs))
}

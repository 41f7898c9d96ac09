//! The generating function `Ψ` of the sums `G^t`, its product formula, and
//! the polynomials `P^t` and `U^t`.

use super::vars::{u_vars, x_from_u};
use super::{t_poly, tau, TSeries};
use crate::error::Result;
use crate::exact::{binomial, monomials_up_to, Rational, Ring, Scalar, Series, TPoly, Vars};
use crate::indices::HeightProfile;
use crate::qseries::Evaluator;

/// Which copy of `P`: `P^t` or `P^{t-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    T,
    TMinusOne,
}

/// The profile `(k, l, h_1, …, h_r)` carried by the monomial
/// `u_1^{k-l-Σh} u_2^{l-h_1} u_3^{h_1-h_2} … u_{r+2}^{h_r}`.
pub fn profile_of(e: &[i32], j: i32) -> Result<HeightProfile> {
    let r = e.len() - 2;
    let mut h = vec![0u32; r];
    h[r - 1] = e[r + 1] as u32;
    for i in (0..r - 1).rev() {
        h[i] = h[i + 1] + e[i + 2] as u32;
    }
    let l = h[0] + e[1] as u32;
    let k = e[0] as u32 + l + h.iter().sum::<u32>();
    HeightProfile::new(k, l, h, j)
}

/// `Ψ = Σ G^t_n(k, l, h) · u^{…}` by summing over profiles up to `cap`.
pub fn psi_bruteforce(ev: &Evaluator, r: usize, cap: i32) -> Result<TSeries> {
    let vars = u_vars(r);
    let mut out = TSeries::zero(&vars, cap);
    for m in monomials_up_to(r + 2, cap) {
        let p = profile_of(m.exps(), -1)?;
        out.add_term(m.exps(), ev.g_sum(&p)?)?;
    }
    Ok(out)
}

/// `P(T)` with its coefficients (lowest power of `T` first) as series.
#[derive(Clone, Debug)]
pub struct PPoly {
    pub coeffs: Vec<TSeries>,
}

/// `P^τ(T) = T^{r+1} - (x_1 + τ x_2) T^r - τ Σ_{i<r} (x_{r+2-i} - x_1 x_{r+1-i}) T^i`
/// for `τ = t` or `t - 1`, with `x` given as series in any ring.
pub fn p_poly(r: usize, shift: Shift, x: &[TSeries]) -> PPoly {
    assert_eq!(x.len(), r + 2, "need x_1, …, x_{{r+2}}");
    let tau = tau(shift);
    let vars = x[0].vars().clone();
    let cap = x[0].cap();
    let mut coeffs = vec![TSeries::zero(&vars, cap); r + 2];
    coeffs[r + 1] = TSeries::one(&vars, cap);
    coeffs[r] = x[0].plus(&x[1].scale(&tau)).negated();
    for (i, c) in coeffs.iter_mut().enumerate().take(r) {
        let d = x[r + 1 - i].minus(&x[0].times(&x[r - i]));
        *c = d.scale(&tau).negated();
    }
    PPoly { coeffs }
}

impl PPoly {
    pub fn eval(&self, t: &Scalar) -> TSeries {
        let mut acc = TSeries::zero(self.coeffs[0].vars(), self.coeffs[0].cap());
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(&TPoly::constant(t.clone())).plus(c);
        }
        acc
    }
}

/// `Π_{j=lo}^{hi} P^{t-1}(1-q^j) / Π_{j=lo'}^{hi'} P^t(1-q^j)`, the shape shared
/// by `Ψ`, `Φ^t(1)` and the coefficients `c_i`.
pub fn p_ratio(
    ev: &Evaluator,
    r: usize,
    x: &[TSeries],
    num: std::ops::RangeInclusive<i64>,
    den: std::ops::RangeInclusive<i64>,
) -> Result<TSeries> {
    let pn = p_poly(r, Shift::TMinusOne, x);
    let pd = p_poly(r, Shift::T, x);
    let vars = x[0].vars().clone();
    let cap = x[0].cap();
    let mut top = TSeries::one(&vars, cap);
    for j in num {
        top = top.times(&pn.eval(&Scalar::one().minus(&ev.q_pow(j)?)));
    }
    let mut bottom = TSeries::one(&vars, cap);
    for j in den {
        bottom = bottom.times(&pd.eval(&Scalar::one().minus(&ev.q_pow(j)?)));
    }
    Ok(top.times(&bottom.invert()?))
}

/// `Ψ` through the product `Π_j P^{t-1}(1-q^j) / P^t(1-q^j)` after the
/// substitution `x = x(u)`.
pub fn psi_product(ev: &Evaluator, r: usize, cap: i32) -> Result<TSeries> {
    let xs = x_from_u(r, cap)?;
    let n = ev.n() as i64;
    p_ratio(ev, r, &xs.x, 1..=n - 1, 1..=n - 1)
}

fn tp(c: i64) -> TPoly {
    TPoly::from_int(c)
}

/// `U^t_n(u_1, u_2, u_3)` for `r = 1`, as an exact polynomial.
pub fn u_poly(n: u32) -> TSeries {
    let vars = u_vars(1);
    let cap = 2 * n as i32;
    let v = |i| Series::var_at(&vars, cap, i);
    let one = TSeries::one(&vars, cap);
    let a_base = one.plus(&v(0));
    let b_base = one.minus(&v(1).scale(&t_poly(1)));
    let c_base = v(2).minus(&v(0).times(&v(1)));
    let n = n as i64;
    let mut out = TSeries::zero(&vars, cap);
    for a in 0..n {
        for b in 0..n - a {
            let d = n - a - b;
            let c = Rational::new(binomial(n - a - 1, b) * binomial(n - b - 1, a), d.into());
            let coeff = TPoly::monomial(Scalar::from(c), (d - 1) as usize);
            let term = a_base
                .pow(a as u32)
                .and_then(|x| Ok(x.times(&b_base.pow(b as u32)?)))
                .and_then(|x| Ok(x.times(&c_base.pow((d - 1) as u32)?)))
                .expect("polynomial powers stay in range");
            out = out.plus(&term.scale(&coeff));
        }
    }
    out
}

/// `U^t_n(0, 0, u_3) = Σ_{i<n} C(n+i, 2i+1)/(i+1) · (t u_3)^i`.
pub fn u_special(n: u32) -> TSeries {
    let vars = u_vars(1);
    let cap = 2 * n as i32;
    let n = n as i64;
    let mut out = TSeries::zero(&vars, cap);
    for i in 0..n {
        let c = Rational::new(binomial(n + i, 2 * i + 1), (i + 1).into());
        out.add_term(&[0, 0, i as i32], TPoly::monomial(Scalar::from(c), i as usize)).expect("in range");
    }
    out
}

/// `U^t_n(u_1, u_2, u_1 u_2) = Σ C(n, i+j+1) u_1^j (-t u_2)^i`.
pub fn u_vandermonde(n: u32) -> TSeries {
    let vars = u_vars(1);
    let cap = 2 * n as i32;
    let n = n as i64;
    let mut out = TSeries::zero(&vars, cap);
    for i in 0..n {
        for j in 0..n - i {
            let c = binomial(n, i + j + 1) * num_bigint::BigInt::from(-1).pow(i as u32);
            let coeff = TPoly::monomial(Scalar::from(Rational::from_integer(c)), i as usize);
            out.add_term(&[j as i32, i as i32, 0], coeff).expect("in range");
        }
    }
    out
}

/// `U^{t-1}_n / U^t_n` truncated at `cap`.
pub fn psi_from_u(n: u32, cap: i32) -> Result<TSeries> {
    let u = u_poly(n).with_cap(cap); // exact: degree ≤ 2n - 2
    let u1 = u.map_coeffs(|c| c.shift(-1));
    Ok(u1.times(&u.invert()?))
}

/// `F_{1,0} = 1 - u`, `F_{1,1}` and `F_{1,2}` in the ring `(u, u_1, u_2, u_3)`.
pub fn f_r1(cap: i32) -> Result<[TSeries; 3]> {
    let vars = Vars::new(&["u", "u1", "u2", "u3"]);
    let v = |i| Series::var_at(&vars, cap, i);
    let one = TSeries::one(&vars, cap);
    let t = t_poly(1);
    let inv = one.plus(&v(1)).invert()?;
    let lin = v(0);
    // 2 + u1 - t(u2 + u1 u2 - u3)
    let b1 = one.scale(&tp(2)).plus(&v(1)).minus(&v(2).plus(&v(1).times(&v(2))).minus(&v(3)).scale(&t));
    let f11 = one.minus(&b1.times(&inv).times(&lin)).plus(&one.minus(&v(2).scale(&t)).times(&inv).times(&lin.pow(2)?));
    let b2 = one.minus(&v(2).scale(&t));
    let f12 = one.minus(&b2.times(&inv).times(&lin));
    Ok([one.minus(&lin), f11, f12])
}

/// `log(1 + g)` for `g` without constant term.
pub fn log1p(g: &TSeries) -> TSeries {
    let mut out = TSeries::zero(g.vars(), g.cap());
    let mut pow = g.clone();
    let mut m = 1i64;
    while !pow.is_zero() {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let c = TPoly::from_rational(&Rational::new(sign.into(), m.into()));
        out = out.plus(&pow.scale(&c));
        pow = pow.times(g);
        m += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::SeriesParams;

    #[test]
    fn profile_from_monomial() {
        let p = profile_of(&[1, 2, 3], -1).unwrap();
        assert_eq!((p.k, p.l, p.h.clone()), (9, 5, vec![3]));
        let p = profile_of(&[0, 0, 1, 2], -1).unwrap();
        assert_eq!((p.k, p.l, p.h.clone()), (8, 3, vec![3, 2]));
    }

    #[test]
    fn product_matches_bruteforce_small() {
        for n in 2..=3 {
            let ev = Evaluator::new(SeriesParams::zeta(n).unwrap());
            let a = psi_bruteforce(&ev, 1, 3).unwrap();
            let b = psi_product(&ev, 1, 3).unwrap();
            assert_eq!(a.first_mismatch(&b), None, "n = {n}");
        }
    }

    #[test]
    fn u_two() {
        // U_2 = 2 + u1 - t u2 + (t/2)(u3 - u1 u2)
        let u = u_poly(2);
        assert_eq!(u.constant_term(), TPoly::from_int(2));
        assert_eq!(u.coefficient(&[0, 0, 1]), TPoly::monomial(Scalar::from(Rational::new(1.into(), 2.into())), 1));
        assert_eq!(u.coefficient(&[1, 1, 0]), TPoly::monomial(Scalar::from(Rational::new((-1).into(), 2.into())), 1));
        assert_eq!(u_special(2).coefficient(&[0, 0, 1]), u.coefficient(&[0, 0, 1]));
    }

    #[test]
    fn product_matches_bruteforce_r2_rational_q() {
        let ev = Evaluator::new(SeriesParams::new(4, Scalar::from(-3)).unwrap());
        let a = psi_bruteforce(&ev, 2, 3).unwrap();
        let b = psi_product(&ev, 2, 3).unwrap();
        assert_eq!(a.first_mismatch(&b), None);
    }

    #[test]
    fn u_ratio_matches_bruteforce() {
        for n in 2..=4 {
            let ev = Evaluator::new(SeriesParams::zeta(n).unwrap());
            let a = psi_bruteforce(&ev, 1, 4).unwrap();
            let b = psi_from_u(n, 4).unwrap();
            assert_eq!(a.first_mismatch(&b), None, "n = {n}");
        }
    }
}

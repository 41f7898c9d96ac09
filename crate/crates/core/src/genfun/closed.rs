//! Closed forms at roots of unity: sum formulas, evaluations of
//! `z̄^t({k}^l)`, their generating functions in `v`, and the limit `ξ^t({1}^l)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::psi::log1p;
use super::{t_poly, TSeries};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, Rational, Ring, Scalar, Series, TPoly, Vars};
use crate::indices::{compositions, MultiIndex};
use crate::qseries::Evaluator;

/// Dense `Σ c_{ij} x^i y^j` truncated at `x^{li}`, `y^{kj}`.
#[derive(Clone, Debug)]
struct Grid {
    li: usize,
    kj: usize,
    c: Vec<TPoly>,
}

impl Grid {
    fn zero(li: usize, kj: usize) -> Self {
        Grid { li, kj, c: vec![TPoly::zero(); (li + 1) * (kj + 1)] }
    }

    fn at(&self, i: usize, j: usize) -> &TPoly {
        &self.c[i * (self.kj + 1) + j]
    }

    fn add(&mut self, i: usize, j: usize, v: &TPoly) {
        if i <= self.li && j <= self.kj {
            self.c[i * (self.kj + 1) + j].add_assign_ref(v);
        }
    }

    fn mul(&self, o: &Grid) -> Grid {
        let mut out = Grid::zero(self.li, self.kj);
        for i in 0..=self.li {
            for j in 0..=self.kj {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=self.li - i {
                    for j2 in 0..=self.kj - j {
                        let b = o.at(i2, j2);
                        if !b.is_zero() {
                            out.add(i + i2, j + j2, &a.times(b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn q(r: Rational) -> TPoly {
    TPoly::from_rational(&r)
}

fn qi(n: BigInt) -> TPoly {
    q(Rational::from_integer(n))
}

fn n_pow(n: u32, e: u32) -> Rational {
    Rational::from_integer(BigInt::from(n).pow(e))
}

/// `[x^l y^k] Σ_{m=0}^{m_max} norm(m) · first · rest^m`.
fn block_sum(first: &Grid, rest: &Grid, m_max: usize, norm: impl Fn(u32) -> Rational) -> TPoly {
    let (l, k) = (first.li, first.kj);
    let mut acc = first.clone();
    let mut out = TPoly::zero();
    for m in 0..=m_max {
        out.add_assign_ref(&acc.at(l, k).times(&q(norm(m as u32))));
        acc = acc.mul(rest);
    }
    out
}

fn alt(m: u32) -> Rational {
    if m.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Which closed form of the sum over `I(k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumForm {
    /// Binomial blocks only.
    Binomial,
    /// Blocks carrying depth-one values `z̄_n(l_a; ζ_n)`.
    DepthOne,
    /// The `t = 0` sum formula over `j = l..=k`.
    TZero,
    /// Its rearrangement over `j < l`, for `l >= 1`.
    TZeroRearranged,
}

/// `z̄_n(m; ζ_n)` for `m = 0..=k`, with `z̄_n(0) = -1`.
fn depth_one(ev: &Evaluator, k: u32) -> Result<Vec<Scalar>> {
    (0..=k).map(|m| ev.zbar(&crate::indices::MultiIndex::from_raw(vec![m]))).collect()
}

/// `Σ_{k ∈ I(k,l)} z̄^t(k)` by listing compositions.
pub fn g_sum_kl(ev: &Evaluator, k: u32, l: u32) -> Result<TPoly> {
    let mut out = TPoly::zero();
    for comp in compositions(k, l as usize) {
        out = out.plus(&ev.zbar_t(&MultiIndex::from_raw(comp))?);
    }
    Ok(out)
}

/// Closed form for `G^t_n(k, l; ζ_n)`, the sum of `z̄^t` over weight `k` and
/// depth `l`. `ev` must be at `q = ζ_n`.
pub fn sum_formula(ev: &Evaluator, k: u32, l: u32, form: SumForm) -> Result<TPoly> {
    if l > k {
        return Err(Error::InvalidParams(format!("need k >= l, got k = {k}, l = {l}")));
    }
    let n = ev.n();
    let ni = n as i64;
    let c = |j: usize| binomial(ni, j as i64 + 1);
    let (li, kj) = (l as usize, k as usize);
    let w0 = t_poly(0).minus(&t_poly(1));
    let w1 = t_poly(1).negated();
    match form {
        SumForm::Binomial => {
            let mut first = Grid::zero(li, kj);
            let mut rest = Grid::zero(li, kj);
            for j in 0..n as usize {
                for i in 0..=j {
                    first.add(i, j, &qi(c(j)).times(&w0.pow(i as u32)));
                    if j >= 1 {
                        rest.add(i, j, &qi(c(j)).times(&w1.pow(i as u32)));
                    }
                }
            }
            Ok(block_sum(&first, &rest, kj, |m| alt(m) / n_pow(n, m + 1)))
        }
        SumForm::DepthOne => {
            let z = depth_one(ev, k)?;
            let mut first = Grid::zero(li, kj);
            let mut rest = Grid::zero(li, kj);
            for j in 0..n as usize {
                for (la, zl) in z.iter().enumerate() {
                    let base = TPoly::constant(zl.clone()).times(&qi(c(j)));
                    for i in 0..=j {
                        first.add(i, j + la, &base.times(&w0.pow(i as u32)));
                        if i >= 1 {
                            rest.add(i, j + la, &base.times(&w1.pow(i as u32)));
                        }
                    }
                }
            }
            Ok(block_sum(&first, &rest, li, |m| -Rational::one() / n_pow(n, m + 1)))
        }
        SumForm::TZero => {
            let z = depth_one(ev, k)?;
            let mut acc = Scalar::zero();
            for j in l..=k {
                let cj = Scalar::from(Rational::from_integer(c(j as usize)));
                acc = acc.plus(&cj.times(&z[(k - j) as usize]));
            }
            Ok(TPoly::constant(acc.times(&Scalar::from(-Rational::new(1.into(), ni.into())))))
        }
        SumForm::TZeroRearranged => {
            if l == 0 {
                return Err(Error::InvalidParams("the rearranged form needs l >= 1".into()));
            }
            let z = depth_one(ev, k)?;
            let mut acc = Scalar::zero();
            for j in 0..l {
                let cj = Scalar::from(Rational::from_integer(c(j as usize)));
                acc = acc.plus(&cj.times(&z[(k - j) as usize]));
            }
            Ok(TPoly::constant(acc.times(&Scalar::from(Rational::new(1.into(), ni.into())))))
        }
    }
}

/// `Σ_m norm(m) Σ_{i_0 + … + i_m = l} Π coef(i_a) · w0^{i_0} w1^{i_1 + …}`
/// with `0 <= i_0 <= bound` and `1 <= i_a <= bound`.
fn one_var_blocks(
    l: u32,
    bound: usize,
    coef: impl Fn(usize) -> Rational,
    w0: &TPoly,
    w1: &TPoly,
    norm: impl Fn(u32) -> Rational,
) -> TPoly {
    let li = l as usize;
    let mut first = Grid::zero(li, 0);
    let mut rest = Grid::zero(li, 0);
    for i in 0..=bound.min(li) {
        first.add(i, 0, &q(coef(i)).times(&w0.pow(i as u32)));
        if i >= 1 {
            rest.add(i, 0, &q(coef(i)).times(&w1.pow(i as u32)));
        }
    }
    block_sum(&first, &rest, li, norm)
}

/// `z̄^t_n({k}^l; ζ_n)` from its closed form, `k ∈ {1, 2, 3}`.
pub fn eval_constant_index(k: u32, l: u32, n: u32) -> Result<TPoly> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    let ni = n as i64;
    let t = t_poly(1);
    let t1 = t.shift(-1);
    let bound = n as usize - 1;
    let per_m = |m: u32| alt(m) / n_pow(n, m + 1);
    match k {
        1 => Ok(one_var_blocks(
            l,
            bound,
            |i| Rational::from_integer(binomial(ni, i as i64 + 1)),
            &t1.negated(),
            &t.negated(),
            per_m,
        )),
        2 => Ok(one_var_blocks(
            l,
            bound,
            |i| {
                let i = i as i64;
                Rational::new(binomial(ni + i, 2 * i + 1), (i + 1).into())
            },
            &t1,
            &t,
            per_m,
        )),
        3 => Ok(one_var_blocks(
            l,
            bound,
            |i| {
                let i = i as i64;
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let b = binomial(ni + i, 3 * i + 2) + sign * binomial(ni + 2 * i + 1, 3 * i + 2);
                Rational::new(b, (i + 1).into())
            },
            &t1,
            &t,
            |m| alt(m) / n_pow(n, 2 * m + 2),
        )),
        _ => Err(Error::InvalidParams(format!("closed form only for k in 1..=3, got {k}"))),
    }
}

/// The rational polynomial multiplying `(-2πi)^l` in `ξ^t({1}^l)`.
pub fn xi_ones_coeff(l: u32) -> TPoly {
    let t = t_poly(1);
    one_var_blocks(
        l,
        l as usize,
        |i| Rational::new(BigInt::one(), factorial(i as u32 + 1)),
        &TPoly::one().minus(&t),
        &t.negated(),
        alt,
    )
}

pub fn v_vars() -> Vars {
    Vars::new(&["v"])
}

fn rational_only(s: TSeries, what: &str) -> Result<TSeries> {
    for (m, c) in s.terms() {
        if c.coeffs().iter().any(|x| x.is_rational().is_none()) {
            return Err(Error::IrrationalCoefficient(format!("{what} at v^{}: {c:?}", m.exps()[0])));
        }
    }
    Ok(s)
}

/// `Σ_l z̄^t_n({k}^l; ζ_n) v^l` as `Π P̃^{t-1}(ζ^j) / Π P̃^t(ζ^j)`.
pub fn kpow_generating(k: u32, n: u32, vcap: i32) -> Result<TSeries> {
    if k == 0 || n < 1 {
        return Err(Error::InvalidParams(format!("need k >= 1 and n >= 1, got k = {k}, n = {n}")));
    }
    let vars = v_vars();
    let v = Series::var_at(&vars, vcap, 0);
    let one = TSeries::one(&vars, vcap);
    let p_tilde = |tau: &TPoly, big_t: &Scalar| -> TSeries {
        let c = |s: Scalar| TPoly::constant(s);
        let om = Scalar::one().minus(big_t);
        if k == 1 {
            one.scale(&c(om.pow(2))).minus(&v.scale(&tau.times(&c(om))))
        } else {
            one.scale(&c(om.pow(k))).minus(&v.scale(&tau.times(&c(big_t.pow(k - 1)))))
        }
    };
    let t = t_poly(1);
    let t1 = t.shift(-1);
    let mut num = one.clone();
    let mut den = one.clone();
    for j in 1..n as i64 {
        let z = Scalar::zeta_pow(n, j);
        num = num.times(&p_tilde(&t1, &z));
        den = den.times(&p_tilde(&t, &z));
    }
    rational_only(num.times(&den.invert()?), &format!("kpow k={k} n={n}"))
}

/// The products `F̃_j` for `k ∈ {2, 3}` in the ring `(u, v)`.
pub fn f_tilde(k: u32, cap: i32) -> Result<Vec<TSeries>> {
    let vars = Vars::new(&["u", "v"]);
    let u = Series::var_at(&vars, cap, 0);
    let tv = Series::var_at(&vars, cap, 1).scale(&t_poly(1));
    let one = TSeries::one(&vars, cap);
    let om = one.minus(&u);
    match k {
        // F̃_1 = (1-u)^2 - tvu, F̃_2 = 1 - u
        2 => Ok(vec![om.clone(), om.pow(2)?.minus(&tv.times(&u)), om.clone()]),
        // F̃_1 = (1-u)^3 + tvu, F̃_2 = (1-u)^3 - tvu^2, F̃_3 = 1 - u
        3 => Ok(vec![om.clone(), om.pow(3)?.plus(&tv.times(&u)), om.pow(3)?.minus(&tv.times(&u.pow(2)?)), om.clone()]),
        _ => Err(Error::InvalidParams(format!("F-tilde assembled only for k in {{2, 3}}, got {k}"))),
    }
}

/// `H^t_n(v)`, read off as `n [u^n]` of `(-1)^{k-1} log Π F̃_j^{(-1)^j}`.
pub fn h_poly(k: u32, n: u32, vcap: i32) -> Result<TSeries> {
    let cap = n as i32 + vcap;
    let fs = f_tilde(k, cap)?;
    let mut log = TSeries::zero(fs[0].vars(), cap);
    let one = TSeries::one(fs[0].vars(), cap);
    for (j, f) in fs.iter().enumerate() {
        let lf = log1p(&f.minus(&one));
        log = if j % 2 == 0 { log.plus(&lf) } else { log.minus(&lf) };
    }
    if k.is_multiple_of(2) {
        log = log.negated();
    }
    let vars = v_vars();
    let mut out = TSeries::zero(&vars, vcap);
    let nn = TPoly::from_int(n as i64);
    for l in 0..=vcap {
        let c = log.coefficient(&[n as i32, l]);
        out.add_term(&[l], c.times(&nn))?;
    }
    Ok(out)
}

/// `H_n/n = -Σ_{i<n} [C(n+i, 3i+2) + (-1)^i C(n+2i+1, 3i+2)]/(i+1) · (tv)^{i+1}`.
pub fn h_closed_k3(n: u32, vcap: i32) -> TSeries {
    let vars = v_vars();
    let mut out = TSeries::zero(&vars, vcap);
    let ni = n as i64;
    for i in 0..ni {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let b = binomial(ni + i, 3 * i + 2) + sign * binomial(ni + 2 * i + 1, 3 * i + 2);
        let c = -Rational::new(b * BigInt::from(ni), (i + 1).into());
        let _ = out.add_term(&[i as i32 + 1], TPoly::monomial(Scalar::from(c), i as usize + 1));
    }
    out
}

/// `H^{t-1}/H^t · t/(t-1)`. `H^t` is a series in `w = tv` vanishing at `w = 0`,
/// so with `H = w g(w)` the ratio is `g((t-1)v)/g(tv)`.
pub fn h_ratio(h: &TSeries) -> Result<TSeries> {
    let vars = v_vars();
    let vcap = h.cap() - 1;
    let mut g = Vec::new();
    for l in 0..=h.cap() {
        let c = h.coefficient(&[l]);
        let lead = c.coeff(l as usize);
        if c != TPoly::monomial(lead.clone(), l as usize) {
            return Err(Error::InvalidParams(format!("H is not a series in tv at v^{l}: {c:?}")));
        }
        if l == 0 {
            if !lead.is_zero() {
                return Err(Error::InvalidParams("H has a constant term".into()));
            }
            continue;
        }
        g.push(lead);
    }
    let build = |tau: &TPoly| {
        let mut s = TSeries::zero(&vars, vcap);
        for (i, c) in g.iter().enumerate().take(vcap as usize + 1) {
            let _ = s.add_term(&[i as i32], TPoly::constant(c.clone()).times(&tau.pow(i as u32)));
        }
        s
    };
    let t = t_poly(1);
    Ok(build(&t.shift(-1)).times(&build(&t).invert()?))
}

/// `Σ_{b=i}^{n-1-j} C(b, i) C(n-1-b, j)`.
pub fn chu_vandermonde_lhs(n: i64, i: i64, j: i64) -> BigInt {
    (i..=n - 1 - j).fold(BigInt::zero(), |acc, b| acc + binomial(b, i) * binomial(n - 1 - b, j))
}

/// `u_1/((1+u_1)^n - 1)` expanded in `u_1`.
pub fn inverse_power_lhs(n: u32, cap: i32) -> Result<TSeries> {
    let vars = Vars::new(&["u1"]);
    let mut s = TSeries::zero(&vars, cap);
    for j in 0..n as i64 {
        s.add_term(&[j as i32], qi(binomial(n as i64, j + 1)))?;
    }
    s.invert()
}

/// `-(1/n) Σ_l z̄_n(l; ζ_n) u_1^l`.
pub fn inverse_power_rhs(ev: &Evaluator, cap: i32) -> Result<TSeries> {
    let vars = Vars::new(&["u1"]);
    let mut s = TSeries::zero(&vars, cap);
    let z = depth_one(ev, cap.max(0) as u32)?;
    let c = Scalar::from(-Rational::new(1.into(), (ev.n() as i64).into()));
    for (l, v) in z.iter().enumerate() {
        s.add_term(&[l as i32], TPoly::constant(v.times(&c)))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::indices::MultiIndex;
    use crate::qseries::SeriesParams;

    fn tp(c: &[Rational]) -> TPoly {
        TPoly::from_coeffs(c.iter().cloned().map(Scalar::from).collect())
    }

    #[test]
    fn spot_values() {
        let ev = Evaluator::new(SeriesParams::zeta(3).unwrap());
        let third = rat(1, 3);
        assert_eq!(sum_formula(&ev, 2, 2, SumForm::Binomial).unwrap(), tp(&[third.clone(), third.clone()]));
        assert_eq!(sum_formula(&ev, 2, 2, SumForm::DepthOne).unwrap(), tp(&[third.clone(), third.clone()]));
        assert_eq!(sum_formula(&ev, 2, 1, SumForm::TZero).unwrap(), tp(&[rat(-2, 3)]));
        assert_eq!(sum_formula(&ev, 2, 1, SumForm::TZeroRearranged).unwrap(), tp(&[rat(-2, 3)]));
        assert_eq!(eval_constant_index(1, 0, 3).unwrap(), TPoly::one());
        assert_eq!(eval_constant_index(2, 1, 3).unwrap(), tp(&[rat(-2, 3)]));
        assert_eq!(eval_constant_index(1, 2, 3).unwrap(), tp(&[third.clone(), third]));
        assert_eq!(xi_ones_coeff(0), TPoly::one());
        assert_eq!(xi_ones_coeff(1), tp(&[rat(1, 2)]));
    }

    #[test]
    fn constant_index_against_sums() {
        for n in 2..=5 {
            let ev = Evaluator::new(SeriesParams::zeta(n).unwrap());
            for k in 1..=3 {
                let gen = kpow_generating(k, n, 3).unwrap();
                for l in 0..=3 {
                    let direct = ev.zbar_t(&MultiIndex::repeated(k, l as usize)).unwrap();
                    assert_eq!(eval_constant_index(k, l, n).unwrap(), direct, "k={k} l={l} n={n}");
                    assert_eq!(gen.coefficient(&[l as i32]), direct);
                }
            }
        }
    }

    #[test]
    fn h_route() {
        for n in 2..=4 {
            let h = h_poly(3, n, 4).unwrap();
            assert_eq!(h, h_closed_k3(n, 4));
            let ratio = h_ratio(&h).unwrap();
            for l in 0..=3 {
                assert_eq!(ratio.coefficient(&[l]), eval_constant_index(3, l as u32, n).unwrap());
            }
            let ratio2 = h_ratio(&h_poly(2, n, 4).unwrap()).unwrap();
            for l in 0..=3 {
                assert_eq!(ratio2.coefficient(&[l]), eval_constant_index(2, l as u32, n).unwrap());
            }
        }
    }

    #[test]
    fn inverse_power() {
        let ev = Evaluator::new(SeriesParams::zeta(4).unwrap());
        assert_eq!(inverse_power_lhs(4, 6).unwrap(), inverse_power_rhs(&ev, 6).unwrap());
        assert_eq!(chu_vandermonde_lhs(5, 1, 2), binomial(5, 4));
    }
}

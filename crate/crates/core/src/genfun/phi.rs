//! The generating functions `Φ_j` of the sums `X^t_{n,j}` and their
//! `Θ_q` difference system.

use super::check::Checker;
use super::psi::{p_poly, p_ratio, profile_of, Shift};
use super::vars::x_vars;
use super::{t_poly, TSeries, ZSeries};
use crate::error::Result;
use crate::exact::{binomial, monomials_up_to, Rational, Ring, Series, TPoly, ZPoly};
use crate::indices::{indices_up_to_weight, HeightProfile, MultiIndex};
use crate::qseries::{Evaluator, LVariant};

/// `Φ_j = Σ X^t_{n,j}(k, l, h) x_1^{k-l-Σh} x_2^{l-h_1} … x_{r+2}^{h_r}`.
pub fn phi_bruteforce(ev: &Evaluator, r: usize, j: i32, cap: i32) -> Result<ZSeries> {
    let vars = x_vars(r);
    let mut out = ZSeries::zero(&vars, cap);
    for m in monomials_up_to(r + 2, cap) {
        let p = profile_of(m.exps(), j)?;
        out.add_term(m.exps(), ev.x_sum(&p))?;
    }
    Ok(out)
}

/// `X_j(k, l, h)`, read as zero when the data is not a valid profile.
pub fn x_at(ev: &Evaluator, k: i64, l: i64, h: &[i64], j: i32) -> ZPoly {
    if k < 0 || l < 0 || h.iter().any(|&v| v < 0) {
        return ZPoly::zero();
    }
    match HeightProfile::new(k as u32, l as u32, h.iter().map(|&v| v as u32).collect(), j) {
        Ok(p) => ev.x_sum(&p),
        Err(_) => ZPoly::zero(),
    }
}

/// `f(1)` as a constant in `z`.
pub fn at_one(f: &ZPoly) -> ZPoly {
    ZPoly::constant(f.eval(&TPoly::one()))
}

fn z() -> ZPoly {
    ZPoly::x()
}

fn tz(t: TPoly) -> ZPoly {
    ZPoly::constant(t)
}

fn one_minus_z() -> ZPoly {
    ZPoly::one().minus(&z())
}

/// `t(1 - z) + z`, the cleared form of `t + z/(1-z)`.
fn cleared_factor() -> ZPoly {
    one_minus_z().times(&tz(t_poly(1))).plus(&z())
}

fn z_pow(n: u32) -> ZPoly {
    ZPoly::monomial(TPoly::one(), n as usize)
}

/// The `L^t` difference equation for every index up to `max_weight`.
pub fn check_l_difference(ev: &Evaluator, max_weight: u32, chk: &mut Checker) {
    let n = ev.n();
    for k in indices_up_to_weight(max_weight) {
        if k.is_empty() {
            continue;
        }
        let lhs = ev.theta(&ev.l_poly(&k, LVariant::Interp));
        let label = format!("theta L({k})");
        if k.parts()[0] >= 2 {
            chk.value(&label, &lhs, &ev.l_poly(&k.lower_first(), LVariant::Interp));
        } else if k.depth() >= 2 {
            let tail = ev.l_poly(&k.tail(), LVariant::Interp);
            let rhs = cleared_factor().times(&tail).minus(&z_pow(n).times(&at_one(&tail)));
            chk.value(&label, &one_minus_z().times(&lhs), &rhs);
        } else {
            chk.value(&label, &one_minus_z().times(&lhs), &z().minus(&z_pow(n)));
        }
    }
}

/// All valid profiles with `k <= max_k` and `r` heights.
pub fn profiles(r: usize, max_k: u32) -> Vec<(u32, u32, Vec<u32>)> {
    fn heights(r: usize, bound: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in 0..=bound.min(budget) {
            cur.push(v);
            heights(r, v, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=max_k {
        for l in 0..=k {
            let mut hs = Vec::new();
            heights(r, l, k - l, &mut Vec::new(), &mut hs);
            out.extend(hs.into_iter().map(|h| (k, l, h)));
        }
    }
    out
}

/// The three difference relations for `X_j` on every listed profile.
/// Returns how many relations applied.
pub fn check_profile_relations(ev: &Evaluator, r: usize, list: &[(u32, u32, Vec<u32>)], chk: &mut Checker) -> usize {
    let n = ev.n();
    let mut applied = 0;
    let r_i = r as i32;
    for (k, l, h) in list {
        let (k, l) = (*k as i64, *l as i64);
        let h: Vec<i64> = h.iter().map(|&v| v as i64).collect();
        let tag = format!("({k},{l},{h:?})");
        // (i)
        if h[r - 1] >= 1 {
            let mut hm = h.clone();
            hm[r - 1] -= 1;
            let lhs = ev.theta(&x_at(ev, k, l, &h, r_i - 1));
            let rhs = x_at(ev, k - 1, l, &h, r_i - 1).plus(&x_at(ev, k - 1, l, &hm, r_i - 2)).minus(&x_at(
                ev,
                k - 1,
                l,
                &hm,
                r_i - 1,
            ));
            chk.value(&format!("relation (i) at {tag}"), &lhs, &rhs);
            applied += 1;
        }
        // (ii)
        for j in 0..r_i - 1 {
            let ju = j as usize;
            if h[ju] < 1 {
                continue;
            }
            let mut hm = h.clone();
            hm[ju] -= 1;
            let lhs = ev.theta(&x_at(ev, k, l, &h, j).minus(&x_at(ev, k, l, &h, j + 1)));
            let rhs = x_at(ev, k - 1, l, &hm, j - 1).minus(&x_at(ev, k - 1, l, &hm, j));
            chk.value(&format!("relation (ii) j={j} at {tag}"), &lhs, &rhs);
            applied += 1;
        }
        // (iii)
        if l >= 2 {
            let lhs = ev.theta(&x_at(ev, k, l, &h, -1).minus(&x_at(ev, k, l, &h, 0)));
            let tail = x_at(ev, k - 1, l - 1, &h, -1);
            let rhs = cleared_factor().times(&tail).minus(&z_pow(n).times(&at_one(&tail)));
            chk.value(&format!("relation (iii) at {tag}"), &one_minus_z().times(&lhs), &rhs);
            applied += 1;
        }
    }
    applied
}

fn theta_series(ev: &Evaluator, s: &ZSeries) -> ZSeries {
    s.map_coeffs(|c| ev.theta(c))
}

fn times_x(s: &ZSeries, i: usize) -> Result<ZSeries> {
    let mut e = vec![0; s.vars().len()];
    e[i] = 1;
    s.mul_monomial(&e, &ZPoly::one())
}

fn lift(s: &TSeries) -> ZSeries {
    s.map_coeffs(|c| ZPoly::constant(c.clone()))
}

fn formal_x(r: usize, cap: i32) -> Vec<TSeries> {
    let vars = x_vars(r);
    (0..r + 2).map(|i| Series::var_at(&vars, cap, i)).collect()
}

/// `Φ_{-1}, Φ_0, …, Φ_{r-1}` at `cap`.
pub fn phi_all(ev: &Evaluator, r: usize, cap: i32) -> Result<Vec<ZSeries>> {
    (-1..r as i32).map(|j| phi_bruteforce(ev, r, j, cap)).collect()
}

/// The four equations for `Θ_q Φ_j`, each multiplied through by its
/// denominator.
pub fn check_theta_equations(ev: &Evaluator, r: usize, phis: &[ZSeries], chk: &mut Checker) -> Result<()> {
    let n = ev.n();
    let phi = |j: i32| &phis[(j + 1) as usize];
    let vars = phi(-1).vars().clone();
    let cap = phi(-1).cap();
    let one = ZSeries::one(&vars, cap);
    let ri = r as i32;
    // x_{r+1} Θ Φ_{r-1} = x_1 x_{r+1} Φ_{r-1} + x_{r+2}(Φ_{r-2} - Φ_{r-1} - δ_{r,1})
    {
        let lhs = times_x(&theta_series(ev, phi(ri - 1)), r)?;
        let mut inner = phi(ri - 2).minus(phi(ri - 1));
        if r == 1 {
            inner = inner.minus(&one);
        }
        let rhs = times_x(&times_x(phi(ri - 1), 0)?, r)?.plus(&times_x(&inner, r + 1)?);
        chk.series("theta phi_{r-1}", &lhs, &rhs);
    }
    // x_{j+2} Θ(Φ_j - Φ_{j+1}) = x_{j+3}(Φ_{j-1} - Φ_j)
    for j in 1..ri - 1 {
        let ju = j as usize;
        let lhs = times_x(&theta_series(ev, &phi(j).minus(phi(j + 1))), ju + 1)?;
        let rhs = times_x(&phi(j - 1).minus(phi(j)), ju + 2)?;
        chk.series(&format!("theta (phi_{j} - phi_{})", j + 1), &lhs, &rhs);
    }
    // x_2 Θ(Φ_0 - Φ_1) = x_3(Φ - Φ_0 - 1)
    if r >= 2 {
        let lhs = times_x(&theta_series(ev, &phi(0).minus(phi(1))), 1)?;
        let rhs = times_x(&phi(-1).minus(phi(0)).minus(&one), 2)?;
        chk.series("theta (phi_0 - phi_1)", &lhs, &rhs);
    }
    // (1-z) Θ(Φ - Φ_0) = (t(1-z) + z) x_2 Φ - t(1-z) x_2 - z^n x_2 Φ(1)
    {
        let lhs = theta_series(ev, &phi(-1).minus(phi(0))).scale(&one_minus_z());
        let x2phi = times_x(phi(-1), 1)?;
        let phi1 = phi(-1).map_coeffs(at_one);
        let rhs = x2phi
            .scale(&cleared_factor())
            .minus(&times_x(&one, 1)?.scale(&one_minus_z().times(&tz(t_poly(1)))))
            .minus(&times_x(&phi1, 1)?.scale(&z_pow(n)));
        chk.series("theta (phi - phi_0)", &lhs, &rhs);
    }
    Ok(())
}

/// `(P^t(Θ) - z P^{t-1}(Θ)) Φ_{r-1} = z x_{r+2} - z^n x_{r+2} Φ(1)`.
pub fn check_last_equation(ev: &Evaluator, r: usize, phis: &[ZSeries], chk: &mut Checker) -> Result<()> {
    let n = ev.n();
    let cap = phis[0].cap();
    let x = formal_x(r, cap);
    let y0 = &phis[r];
    let apply = |shift: Shift| {
        let p = p_poly(r, shift, &x);
        let mut acc = ZSeries::zero(y0.vars(), cap);
        let mut th = y0.clone();
        for c in &p.coeffs {
            acc = acc.plus(&lift(c).times(&th));
            th = theta_series(ev, &th);
        }
        acc
    };
    let lhs = apply(Shift::T).minus(&apply(Shift::TMinusOne).scale(&z()));
    let phi1 = phis[0].map_coeffs(at_one);
    let one = ZSeries::one(y0.vars(), cap);
    let rhs = times_x(&one.scale(&z()).minus(&phi1.scale(&z_pow(n))), r + 1)?;
    chk.series("P(theta) phi_{r-1}", &lhs, &rhs);
    Ok(())
}

/// `Φ^t(1) = Π P^{t-1}(1-q^j) / Π P^t(1-q^j)` in the formal `x`'s.
pub fn check_phi_at_one(ev: &Evaluator, r: usize, phis: &[ZSeries], chk: &mut Checker) -> Result<()> {
    let cap = phis[0].cap();
    let n = ev.n() as i64;
    let lhs = phis[0].map_coeffs(|c| c.eval(&TPoly::one()));
    let rhs = p_ratio(ev, r, &formal_x(r, cap), 1..=n - 1, 1..=n - 1)?;
    chk.series("phi(1) product", &lhs, &rhs);
    Ok(())
}

/// `[z^i] Φ_{r-1} = x_{r+2} Π_{j<i} P^{t-1}(1-q^j) / Π_{j<=i} P^t(1-q^j)`.
pub fn check_c_i(ev: &Evaluator, r: usize, phis: &[ZSeries], chk: &mut Checker) -> Result<()> {
    let cap = phis[0].cap();
    let y0 = &phis[r];
    let x = formal_x(r, cap);
    chk.series("[z^0] phi_{r-1}", &y0.map_coeffs(|c| c.coeff(0)), &TSeries::zero(y0.vars(), cap));
    for i in 1..ev.n() as i64 {
        let lhs = y0.map_coeffs(|c| c.coeff(i as usize));
        let mut e = vec![0; r + 2];
        e[r + 1] = 1;
        let rhs = p_ratio(ev, r, &x, 1..=i - 1, 1..=i)?.mul_monomial(&e, &TPoly::one())?;
        chk.series(&format!("c_{i}"), &lhs, &rhs);
    }
    Ok(())
}

/// `L^t_{n,k}(1; q) = Σ_a Π C(k_i - 1, a_i - 1) z̄^t_n(a; q)` over `a <= k`
/// componentwise.
pub fn check_l_at_one(ev: &Evaluator, max_weight: u32, chk: &mut Checker) -> Result<()> {
    for k in indices_up_to_weight(max_weight) {
        if k.is_empty() {
            continue;
        }
        let lhs = ev.l_poly(&k, LVariant::Interp).eval(&TPoly::one());
        let mut rhs = TPoly::zero();
        let ranges: Vec<Vec<u32>> = k.parts().iter().map(|&ki| (1..=ki).collect()).collect();
        for a in cartesian(&ranges) {
            let mut c = num_bigint::BigInt::from(1);
            for (ki, ai) in k.parts().iter().zip(&a) {
                c *= binomial(*ki as i64 - 1, *ai as i64 - 1);
            }
            let coeff = TPoly::from_rational(&Rational::from_integer(c));
            rhs = rhs.plus(&ev.zbar_t(&MultiIndex::from_raw(a))?.times(&coeff));
        }
        chk.value(&format!("L({k})(1)"), &lhs, &rhs);
    }
    Ok(())
}

fn cartesian(ranges: &[Vec<u32>]) -> Vec<Vec<u32>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.iter()
            .flat_map(|prefix| {
                r.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use crate::qseries::SeriesParams;

    #[test]
    fn profile_listing() {
        let p = profiles(1, 2);
        // (0,0,0) (1,0,0) (1,1,0) (2,0,0) (2,1,0) (2,1,1) (2,2,0)
        assert_eq!(p.len(), 7);
        assert!(profiles(2, 6).len() >= 50);
    }

    #[test]
    fn difference_system_small() {
        for (n, q) in [(3, Scalar::zeta(3)), (4, Scalar::from(crate::exact::rat(1, 2)))] {
            let ev = Evaluator::new(SeriesParams::new(n, q).unwrap());
            let mut chk = Checker::new();
            check_l_difference(&ev, 4, &mut chk);
            for r in 1..=2 {
                let list = profiles(r, 5);
                check_profile_relations(&ev, r, &list, &mut chk);
                let phis = phi_all(&ev, r, 3).unwrap();
                check_theta_equations(&ev, r, &phis, &mut chk).unwrap();
                check_last_equation(&ev, r, &phis, &mut chk).unwrap();
                check_phi_at_one(&ev, r, &phis, &mut chk).unwrap();
                check_c_i(&ev, r, &phis, &mut chk).unwrap();
            }
            check_l_at_one(&ev, 4, &mut chk).unwrap();
            assert!(chk.ok(), "{:?}", chk.mismatch);
        }
    }
}

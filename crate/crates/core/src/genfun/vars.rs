//! The changes of variables between `u_1, …, u_{r+2}` and `x_1, …, x_{r+2}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::TSeries;
use crate::error::Result;
use crate::exact::{binomial, Rational, Ring, Series, TPoly, Vars};

pub fn u_vars(r: usize) -> Vars {
    Vars::numbered("u", r + 2)
}

pub fn x_vars(r: usize) -> Vars {
    Vars::numbered("x", r + 2)
}

/// `x_1, …, x_{r+2}` as power series in the `u`'s.
#[derive(Clone, Debug)]
pub struct XSeriesSet {
    pub r: usize,
    pub cap: i32,
    pub x: Vec<TSeries>,
}

fn laurent_floor(r: usize, cap: i32) -> i32 {
    -(r as i32 + 1) * cap.max(1)
}

fn coeff(c: BigInt) -> TPoly {
    TPoly::from_rational(&Rational::from_integer(c))
}

/// `c · v_{r+2} · v_1^{-m}` in a Laurent ring.
fn top_over_first(vars: &Vars, cap: i32, r: usize, m: i32, c: TPoly) -> Result<TSeries> {
    let mut e = vec![0; r + 2];
    e[0] = -m;
    e[r + 1] = 1;
    Series::monomial(vars, cap, &e, c).with_floor(&vars.names()[0], laurent_floor(r, cap))
}

/// Shared shape of both substitutions:
/// `y_i = Σ_{j=i}^{r+1} s^{j-i} C(j-2, i-2) (v_j - v_{r+2}/v_1^{r+2-j})
///        + v_{r+2} / (v_1^{r+2-i} (1 + s·v_1)^{i-1})`,
/// with `s = -1` for `x(u)` and `s = +1` for `u(x)`; also returns
/// `y_1 = v_1/(1 + s·v_1)`.
fn change(vars: &Vars, r: usize, cap: i32, sign: i64) -> Result<Vec<TSeries>> {
    // Each Laurent term has degree >= 1 - r, so r extra orders suffice.
    let w = cap + r as i32 + 1;
    let floor = laurent_floor(r, w);
    let v = |i: usize| Series::var_at(vars, w, i);
    let s = TPoly::from_int(sign);
    // 1/(1 - s v_1)
    let denom = TSeries::one(vars, w).minus(&v(0).scale(&s)).invert()?;
    let mut out = Vec::with_capacity(r + 2);
    out.push(v(0).times(&denom).truncate(cap));
    let mut denom_pow = TSeries::one(vars, w);
    for i in 2..=r + 2 {
        denom_pow = denom_pow.times(&denom);
        let mut y = TSeries::zero(vars, w).with_floor(&vars.names()[0], floor)?;
        for j in i..=r + 1 {
            let c = binomial(j as i64 - 2, i as i64 - 2) * BigInt::from(sign).pow((j - i) as u32);
            let c = coeff(c);
            let mut term = v(j - 1).minus(&top_over_first(vars, w, r, (r + 2 - j) as i32, TPoly::one())?);
            term = term.scale(&c);
            y = y.plus(&term);
        }
        let tail = top_over_first(vars, w, r, (r + 2 - i) as i32, TPoly::one())?.try_mul(&denom_pow)?;
        y = y.plus(&tail);
        out.push(y.into_power_series()?.truncate(cap));
    }
    Ok(out)
}

/// `x_1 = u_1/(1+u_1)` and the Laurent expressions for `x_i`, composed with
/// the negative powers of `u_1` cancelled.
pub fn x_from_u(r: usize, cap: i32) -> Result<XSeriesSet> {
    Ok(XSeriesSet { r, cap, x: change(&u_vars(r), r, cap, -1)? })
}

/// `u_1 = x_1/(1-x_1)` and the inverse expressions for `u_i`, as power
/// series in the `x`'s.
pub fn u_from_x(r: usize, cap: i32) -> Result<Vec<TSeries>> {
    change(&x_vars(r), r, cap, 1)
}

/// `t_{ij} = C(j-1, i-1)` for `i <= j`, an `r × r` upper triangular matrix.
pub fn pascal_t(r: usize) -> Vec<Vec<BigInt>> {
    (1..=r).map(|i| (1..=r).map(|j| binomial(j as i64 - 1, i as i64 - 1)).collect()).collect()
}

/// `t'_{ij} = (-1)^{j-i} C(j-1, i-1)`.
pub fn pascal_t_inv(r: usize) -> Vec<Vec<BigInt>> {
    (1..=r)
        .map(|i| {
            (1..=r)
                .map(|j| {
                    let b = binomial(j as i64 - 1, i as i64 - 1);
                    if (j + i) % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

pub fn is_identity(a: &[Vec<BigInt>]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
}

/// `x_2, …, x_{r+1}` recovered from the matrix form
/// `x = T^{-1}(u - u_{r+2}/u_1^{r+1-j}) + u_{r+2}/(u_1^{r+1-i}(1+u_1)^i)`.
pub fn x_from_u_matrix(r: usize, cap: i32) -> Result<Vec<TSeries>> {
    let vars = u_vars(r);
    let w = cap + r as i32 + 1;
    let floor = laurent_floor(r, w);
    let tinv = pascal_t_inv(r);
    let inv1p = TSeries::one(&vars, w).plus(&Series::var_at(&vars, w, 0)).invert()?;
    let shifted: Vec<TSeries> = (1..=r)
        .map(|j| {
            let uj = Series::var_at(&vars, w, j);
            Ok(uj.minus(&top_over_first(&vars, w, r, (r + 1 - j) as i32, TPoly::one())?))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(r);
    for i in 1..=r {
        let mut y = TSeries::zero(&vars, w).with_floor("u1", floor)?;
        for (j, s) in shifted.iter().enumerate() {
            if !tinv[i - 1][j].is_zero() {
                y = y.plus(&s.scale(&coeff(tinv[i - 1][j].clone())));
            }
        }
        let tail = top_over_first(&vars, w, r, (r + 1 - i) as i32, TPoly::one())?.try_mul(&inv1p.pow(i as u32)?)?;
        out.push(y.plus(&tail).into_power_series()?.truncate(cap));
    }
    Ok(out)
}

/// `u_2, …, u_{r+1}` via `T`, the forward matrix form.
pub fn u_from_x_matrix(r: usize, cap: i32) -> Result<Vec<TSeries>> {
    let vars = x_vars(r);
    let w = cap + r as i32 + 1;
    let floor = laurent_floor(r, w);
    let t = pascal_t(r);
    let inv1m = TSeries::one(&vars, w).minus(&Series::var_at(&vars, w, 0)).invert()?;
    let mut out = Vec::with_capacity(r);
    for i in 1..=r {
        let mut y = TSeries::zero(&vars, w).with_floor("x1", floor)?;
        for j in 1..=r {
            if t[i - 1][j - 1].is_zero() {
                continue;
            }
            let xj = Series::var_at(&vars, w, j);
            let s = xj.minus(&top_over_first(&vars, w, r, (r + 1 - j) as i32, TPoly::one())?);
            y = y.plus(&s.scale(&coeff(t[i - 1][j - 1].clone())));
        }
        let tail = top_over_first(&vars, w, r, (r + 1 - i) as i32, TPoly::one())?.try_mul(&inv1m.pow(i as u32)?)?;
        out.push(y.plus(&tail).into_power_series()?.truncate(cap));
    }
    Ok(out)
}

/// `u(x(u))`, which should be the identity.
pub fn round_trip(r: usize, cap: i32) -> Result<Vec<TSeries>> {
    let xs = x_from_u(r, cap)?;
    let us = u_from_x(r, cap)?;
    let names: Vec<String> = x_vars(r).names().to_vec();
    let bindings: Vec<(&str, &TSeries)> = names.iter().map(String::as_str).zip(xs.x.iter()).collect();
    let target = TSeries::zero(&u_vars(r), cap);
    us.iter().map(|u| u.substitute(&bindings, &target)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> TPoly {
        TPoly::from_int(v)
    }

    #[test]
    fn r1_examples() {
        let xs = x_from_u(1, 3).unwrap();
        // x2 = u2 - u3 + u1 u3 - u1^2 u3
        let x2 = &xs.x[1];
        assert_eq!(x2.coefficient(&[0, 1, 0]), c(1));
        assert_eq!(x2.coefficient(&[0, 0, 1]), c(-1));
        assert_eq!(x2.coefficient(&[1, 0, 1]), c(1));
        assert_eq!(x2.coefficient(&[2, 0, 1]), c(-1));
        assert_eq!(x2.len(), 4);
        // x3 = u3/(1+u1)^2 = u3 - 2 u1 u3 + 3 u1^2 u3
        let x3 = &xs.x[2];
        assert_eq!(x3.coefficient(&[1, 0, 1]), c(-2));
        assert_eq!(x3.coefficient(&[2, 0, 1]), c(3));
        // u2 = x2 + x3/(1 - x1)
        let us = u_from_x(1, 3).unwrap();
        assert_eq!(us[1].coefficient(&[0, 1, 0]), c(1));
        assert_eq!(us[1].coefficient(&[2, 0, 1]), c(1));
    }

    #[test]
    fn pascal() {
        assert_eq!(pascal_t(2), vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(1)]]);
        assert_eq!(pascal_t_inv(2)[0][1], BigInt::from(-1));
        for r in 1..=5 {
            assert!(is_identity(&mat_mul(&pascal_t(r), &pascal_t_inv(r))));
        }
    }
}

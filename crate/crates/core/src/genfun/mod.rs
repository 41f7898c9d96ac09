//! Generating functions in `u` and `x`, closed forms, and the identity
//! registry used by the verification suite.

pub mod check;
pub mod closed;
pub mod hypergeom;
pub mod identity;
pub mod phi;
pub mod psi;
pub mod vars;

use crate::exact::{Ring, Scalar, Series, TPoly, ZPoly};

pub use psi::{p_poly, profile_of, psi_bruteforce, psi_product, u_poly, u_special, PPoly, Shift};
pub use vars::{pascal_t, pascal_t_inv, u_from_x, x_from_u, XSeriesSet};

/// Series with coefficients in `K[t]`.
pub type TSeries = Series<TPoly>;
/// Series with coefficients in `K[t][z]`.
pub type ZSeries = Series<ZPoly>;

/// `t^e`.
pub fn t_poly(e: usize) -> TPoly {
    TPoly::monomial(Scalar::one(), e)
}

/// `t` or `t - 1`.
pub fn tau(shift: Shift) -> TPoly {
    match shift {
        Shift::T => t_poly(1),
        Shift::TMinusOne => t_poly(1).shift(-1),
    }
}

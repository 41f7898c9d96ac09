use std::fmt;

use super::rational::Rational;

/// Commutative ring with unit, as used for every coefficient domain in the
/// crate: scalars, polynomials in `t` or `z`, and truncated series.
///
/// Method names deliberately avoid `add`/`mul` so that the std operator
/// traits can be implemented on the same types without ambiguity.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Canonical image of a rational number.
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse when it exists inside the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.minus(rhs);
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Implements the std arithmetic operators for a concrete [`Ring`] type.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::exact::Ring::plus(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exact::Ring::plus(&self, &rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::exact::Ring::minus(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::exact::Ring::minus(&self, &rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::exact::Ring::times(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exact::Ring::times(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exact::Ring::negated(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exact::Ring::negated(&self)
            }
        }
        impl std::ops::AddAssign<&$t> for $t {
            fn add_assign(&mut self, rhs: &$t) {
                $crate::exact::Ring::add_assign_ref(self, rhs)
            }
        }
        impl std::ops::SubAssign<&$t> for $t {
            fn sub_assign(&mut self, rhs: &$t) {
                $crate::exact::Ring::sub_assign_ref(self, rhs)
            }
        }
    };
    (generic $name:ident) => {
        impl<'a, C: $crate::exact::Ring> std::ops::Add<&'a $name<C>> for &'a $name<C> {
            type Output = $name<C>;
            fn add(self, rhs: &'a $name<C>) -> $name<C> {
                $crate::exact::Ring::plus(self, rhs)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::Add for $name<C> {
            type Output = $name<C>;
            fn add(self, rhs: $name<C>) -> $name<C> {
                $crate::exact::Ring::plus(&self, &rhs)
            }
        }
        impl<'a, C: $crate::exact::Ring> std::ops::Sub<&'a $name<C>> for &'a $name<C> {
            type Output = $name<C>;
            fn sub(self, rhs: &'a $name<C>) -> $name<C> {
                $crate::exact::Ring::minus(self, rhs)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::Sub for $name<C> {
            type Output = $name<C>;
            fn sub(self, rhs: $name<C>) -> $name<C> {
                $crate::exact::Ring::minus(&self, &rhs)
            }
        }
        impl<'a, C: $crate::exact::Ring> std::ops::Mul<&'a $name<C>> for &'a $name<C> {
            type Output = $name<C>;
            fn mul(self, rhs: &'a $name<C>) -> $name<C> {
                $crate::exact::Ring::times(self, rhs)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::Mul for $name<C> {
            type Output = $name<C>;
            fn mul(self, rhs: $name<C>) -> $name<C> {
                $crate::exact::Ring::times(&self, &rhs)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::Neg for &$name<C> {
            type Output = $name<C>;
            fn neg(self) -> $name<C> {
                $crate::exact::Ring::negated(self)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::Neg for $name<C> {
            type Output = $name<C>;
            fn neg(self) -> $name<C> {
                $crate::exact::Ring::negated(&self)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::AddAssign<&$name<C>> for $name<C> {
            fn add_assign(&mut self, rhs: &$name<C>) {
                $crate::exact::Ring::add_assign_ref(self, rhs)
            }
        }
        impl<C: $crate::exact::Ring> std::ops::SubAssign<&$name<C>> for $name<C> {
            fn sub_assign(&mut self, rhs: &$name<C>) {
                $crate::exact::Ring::sub_assign_ref(self, rhs)
            }
        }
    };
}

pub(crate) use impl_ring_ops;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

/// Field element with an explicit context (the field it lives in).
///
/// Rationals carry a unit context; number-field elements carry their field.
pub trait Scalar: Clone + PartialEq + Debug {
    type Ctx: Clone + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn render(&self) -> String;

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Coefficients of the product of two nonempty dense polynomials.
    fn mul_slices(a: &[Self], b: &[Self]) -> Vec<Self> {
        let ctx = a[0].ctx();
        let mut out = vec![Self::zero_in(&ctx); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }
}

/// Common denominator and integer numerators of a coefficient list.
fn clear_denominators(a: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (den, nums)
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn one_in(_: &()) -> Self {
        Rational::one()
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn render(&self) -> String {
        fmt_rational(self)
    }
    fn mul_slices(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (da, na) = clear_denominators(a);
        let (db, nb) = clear_denominators(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        out.into_iter().map(|c| Rational::new(c, den.clone())).collect()
    }
}

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::error::AlgebraError;
use super::factor::factor_rational;
use super::rational::Rational;
use super::scalar::Scalar;
use super::upoly::UPoly;

/// A simple extension Q[a]/(p) with p monic and irreducible over Q.
///
/// The degree-one field with p = x stands for Q itself.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    minimal_polynomial: UPoly<Rational>,
}

impl NumberField {
    /// Builds Q[a]/(p), certifying irreducibility with the rational factorizer.
    pub fn new(p: &UPoly<Rational>) -> Result<Arc<Self>, AlgebraError> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let p = p.monic();
        let fac = factor_rational(&p);
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(AlgebraError::Reducible(p.render("x")));
        }
        Ok(Arc::new(NumberField { minimal_polynomial: p }))
    }

    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField { minimal_polynomial: UPoly::x(()) })
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.deg0()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn minimal_polynomial(&self) -> &UPoly<Rational> {
        &self.minimal_polynomial
    }
}

/// Element of a [`NumberField`], stored as its reduced representative in Q[a].
#[derive(Clone, PartialEq)]
pub struct Nf {
    field: Arc<NumberField>,
    rep: UPoly<Rational>,
}

impl Nf {
    pub fn from_poly(field: &Arc<NumberField>, p: &UPoly<Rational>) -> Self {
        let rep = if field.is_rationals() {
            UPoly::constant(p.eval(&Rational::zero()))
        } else {
            p.rem(&field.minimal_polynomial)
        };
        Nf { field: field.clone(), rep }
    }

    pub fn rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Nf { field: field.clone(), rep: UPoly::constant(r) }
    }

    /// The class of `a`, i.e. a root of the minimal polynomial.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Nf::from_poly(field, &UPoly::x(()))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &UPoly<Rational> {
        &self.rep
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.rep.deg0() == 0).then(|| self.rep.coeff(0))
    }
}

impl Scalar for Nf {
    type Ctx = Arc<NumberField>;

    fn ctx(&self) -> Arc<NumberField> {
        self.field.clone()
    }
    fn zero_in(ctx: &Arc<NumberField>) -> Self {
        Nf { field: ctx.clone(), rep: UPoly::zero(()) }
    }
    fn one_in(ctx: &Arc<NumberField>) -> Self {
        Nf::rational(ctx, Rational::one())
    }
    fn from_rational(ctx: &Arc<NumberField>, r: &Rational) -> Self {
        Nf::rational(ctx, r.clone())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Nf { field: self.field.clone(), rep: self.rep.add(&other.rep) }
    }
    fn sub(&self, other: &Self) -> Self {
        Nf { field: self.field.clone(), rep: self.rep.sub(&other.rep) }
    }
    fn mul(&self, other: &Self) -> Self {
        Nf::from_poly(&self.field, &self.rep.mul(&other.rep))
    }
    fn neg(&self) -> Self {
        Nf { field: self.field.clone(), rep: self.rep.neg() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.field.is_rationals() {
            return Nf::rational(&self.field, self.rep.coeff(0).recip());
        }
        // extended Euclid: u*rep + v*p = 1
        let p = &self.field.minimal_polynomial;
        let (mut r0, mut r1) = (p.clone(), self.rep.clone());
        let (mut s0, mut s1) = (UPoly::zero(()), UPoly::one(()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since p is irreducible
        let c = r0.coeff(0);
        Nf::from_poly(&self.field, &s0.scale(&c.recip()))
    }
    fn render(&self) -> String {
        if self.rep.deg0() == 0 {
            return self.rep.coeff(0).render();
        }
        let mut parts = Vec::new();
        for (i, c) in self.rep.coeffs().iter().enumerate().rev() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let cs = c.render();
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

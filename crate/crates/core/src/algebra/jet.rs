use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::error::AlgebraError;
use super::numfield::{Nf, NumberField};
use super::rational::{fmt_rational, Rational};
use super::scalar::Scalar;
use super::upoly::UPoly;

/// A closed point of the base P^1: rational, one Galois representative of an
/// algebraic point (a root of the field's minimal polynomial), or [0:1].
#[derive(Clone, Debug, PartialEq)]
pub enum BasePoint {
    Rational(Rational),
    Algebraic(Arc<NumberField>),
    Infinity,
}

impl BasePoint {
    /// Field of definition of the representative.
    pub fn field(&self) -> Arc<NumberField> {
        match self {
            BasePoint::Algebraic(k) => k.clone(),
            _ => NumberField::rationals(),
        }
    }

    /// Coordinate in the chart used for local expansions: t for finite points, s = t0/t1 at infinity.
    pub fn coordinate(&self) -> Nf {
        match self {
            BasePoint::Rational(r) => Nf::rational(&self.field(), r.clone()),
            BasePoint::Algebraic(k) => Nf::generator(k),
            BasePoint::Infinity => Nf::rational(&self.field(), Rational::zero()),
        }
    }

    /// Number of geometric points represented (size of the Galois orbit).
    pub fn conjugates(&self) -> usize {
        match self {
            BasePoint::Algebraic(k) => k.degree(),
            _ => 1,
        }
    }

    /// Stable serialization key.
    pub fn key(&self) -> String {
        match self {
            BasePoint::Rational(r) => format!("t={}", fmt_rational(r)),
            BasePoint::Algebraic(k) => {
                let p = super::poly::Poly::from_upoly(&super::poly::Poly::zero(&["t"]), 0, k.minimal_polynomial());
                format!("t=root({p})")
            }
            BasePoint::Infinity => "t=inf".to_string(),
        }
    }

    /// Sort key: infinity last, then by field degree, then by serialization.
    pub fn order_key(&self) -> (u8, usize, String) {
        match self {
            BasePoint::Rational(r) => (0, 1, format!("{:>40}", fmt_rational(r))),
            BasePoint::Algebraic(k) => (1, k.degree(), self.key()),
            BasePoint::Infinity => (2, 1, String::new()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Power series in the local parameter u at `center`, known modulo u^(truncation_order + 1).
///
/// A jet built from a polynomial of degree at most `truncation_order` is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalJet {
    pub center: BasePoint,
    coeffs: Vec<Nf>,
    truncation_order: usize,
    exact: bool,
}

impl LocalJet {
    pub fn new(center: BasePoint, mut coeffs: Vec<Nf>, truncation_order: usize) -> Self {
        assert!(truncation_order >= 1, "truncation_order must be at least 1");
        coeffs.truncate(truncation_order + 1);
        LocalJet { center, coeffs, truncation_order, exact: false }
    }

    /// Taylor expansion of a chart polynomial at the center.
    pub fn expand(center: BasePoint, f: &UPoly<Rational>, truncation_order: usize) -> Self {
        let k = center.field();
        let fk: UPoly<Nf> = f.map(k.clone(), |c| Nf::rational(&k, c.clone()));
        let shifted = fk.taylor_shift(&center.coordinate());
        let exact = f.deg0() <= truncation_order;
        let mut jet = LocalJet::new(center, shifted.into_coeffs(), truncation_order);
        jet.exact = exact;
        jet
    }

    pub fn coeffs(&self) -> &[Nf] {
        &self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Coefficient of u^k; zero beyond the stored list.
    pub fn coeff(&self, k: usize) -> Nf {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Nf::zero_in(&self.center.field()))
    }

    pub fn sub(&self, other: &LocalJet) -> LocalJet {
        let n = self.truncation_order.min(other.truncation_order);
        let coeffs = (0..=n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        LocalJet {
            center: self.center.clone(),
            coeffs,
            truncation_order: n,
            exact: self.exact && other.exact,
        }
    }

    /// Order of vanishing at the center.
    pub fn valuation(&self) -> Result<Valuation, AlgebraError> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Ok(Valuation::Finite(k as u32)),
            None if self.exact => Ok(Valuation::Infinite),
            None => Err(AlgebraError::TruncationTooShort),
        }
    }
}

/// Order of vanishing of a chart polynomial at a base point.
///
/// For `Infinity`, `form_degree` is the degree of the binary form the polynomial dehomogenizes.
pub fn valuation_upoly(f: &UPoly<Rational>, point: &BasePoint, form_degree: Option<usize>) -> Valuation {
    if f.is_zero() {
        return Valuation::Infinite;
    }
    match point {
        BasePoint::Infinity => {
            let d = form_degree.unwrap_or_else(|| f.deg0());
            Valuation::Finite(d.saturating_sub(f.deg0()) as u32)
        }
        BasePoint::Rational(a) => {
            let lin = UPoly::new((), vec![-a.clone(), Rational::from_integer(1.into())]);
            multiplicity(f, &lin)
        }
        BasePoint::Algebraic(k) => multiplicity(f, k.minimal_polynomial()),
    }
}

fn multiplicity(f: &UPoly<Rational>, p: &UPoly<Rational>) -> Valuation {
    let mut g = f.clone();
    let mut m = 0;
    while let Some(q) = g.exact_div(p) {
        g = q;
        m += 1;
    }
    Valuation::Finite(m)
}

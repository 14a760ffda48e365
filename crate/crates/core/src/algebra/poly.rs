use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::error::AlgebraError;
use super::rational::{fmt_rational, Rational};

use super::upoly::UPoly;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q with a fixed, named variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Poly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        Poly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; self.nvars()]), c);
        }
        p
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        Poly::zero(vars).constant_like(c)
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self, AlgebraError> {
        let z = Poly::zero(vars);
        let i = z.var_index(name)?;
        Ok(z.var_like(i))
    }

    /// The variable with index `i`, in this polynomial's variable set.
    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial_like(Monomial(e), Rational::one())
    }

    pub fn monomial_like(&self, m: Monomial, c: Rational) -> Self {
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars());
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial(vec![0; self.nvars()])).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn check_vars(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "variable mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let entry = acc.entry(Monomial(e)).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { vars: self.vars.clone(), terms: acc }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = self.constant_like(Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, AlgebraError> {
        self.check_vars(d);
        let (lm, lc) = d.leading_term().ok_or(AlgebraError::ZeroPolynomial)?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut q = self.zero_like();
        let mut r = self.clone();
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Err(AlgebraError::InexactDivision);
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let t = self.monomial_like(Monomial(e), c * &lc_inv);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Ok(q)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(Monomial(e), c * Rational::from_integer(BigInt::from(m.0[i])));
            }
        }
        out
    }

    /// Coefficients of powers of variable `i`; each coefficient keeps the full variable set.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![self.zero_like(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(template: &Poly, i: usize, coeffs: &[Poly]) -> Poly {
        let mut out = template.zero_like();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Evaluates at a point with coordinates in any field containing Q.
    pub fn eval<F: super::scalar::Scalar>(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let ctx = point.first().map(|p| p.ctx());
        let ctx = match ctx {
            Some(c) => c,
            None => panic!("evaluation of a polynomial without variables needs a context"),
        };
        let mut acc = F::zero_in(&ctx);
        for (m, c) in &self.terms {
            let mut t = F::from_rational(&ctx, c);
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces every variable by a polynomial (all in a common target variable set).
    pub fn substitute_all(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].zero_like();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![p.constant_like(Rational::one())]).collect();
        let mut out = target.clone();
        for (m, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces variable `i` by `image` (same variable set).
    pub fn substitute(&self, i: usize, image: &Poly) -> Poly {
        let images: Vec<Poly> =
            (0..self.nvars()).map(|j| if j == i { image.clone() } else { self.var_like(j) }).collect();
        self.substitute_all(&images)
    }

    pub fn eval_var(&self, i: usize, value: &Rational) -> Poly {
        self.substitute(i, &self.constant_like(value.clone()))
    }

    /// Re-expresses this polynomial over another variable list, matching by name.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Poly, AlgebraError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (k, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if !self.depends_on(k) => map.push(None),
                None => {
                    return Err(AlgebraError::VariableMismatch(
                        self.vars.to_vec(),
                        vars.iter().map(|s| s.to_string()).collect(),
                    ))
                }
            }
        }
        let mut out = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[k] {
                    e[j] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn to_upoly(&self, i: usize) -> Result<UPoly<Rational>, AlgebraError> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return Err(AlgebraError::VariableMismatch(self.vars.to_vec(), vec![self.vars[i].clone()]));
            }
            let k = m.0[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UPoly::new((), coeffs))
    }

    pub fn from_upoly(template: &Poly, i: usize, u: &UPoly<Rational>) -> Poly {
        let mut out = template.zero_like();
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; template.nvars()];
            e[i] = k as u32;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Integer coefficients with gcd 1 and a positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = Rational::new(den_lcm, num_gcd);
        if self.leading_coefficient().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn monic(&self) -> Poly {
        let lc = self.leading_coefficient();
        if lc.is_zero() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }
}

impl fmt::Display for Poly {
    /// Canonical text: graded-lex descending, `c*x^a*y^b`, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_poly;
    use super::*;

    #[test]
    fn canonical_text_is_graded_lex() {
        let p = parse_poly("y^2 + x - 3/2 + x*y", &["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "x*y + y^2 + x - 3/2");
    }

    #[test]
    fn exact_division() {
        let vars = ["x", "y"];
        let a = parse_poly("x^2 - y^2", &vars).unwrap();
        let b = parse_poly("x + y", &vars).unwrap();
        assert_eq!(a.exact_div(&b).unwrap(), parse_poly("x - y", &vars).unwrap());
        assert!(parse_poly("x^2 + y", &vars).unwrap().exact_div(&b).is_err());
    }

    #[test]
    fn coefficient_views_round_trip() {
        let vars = ["t", "l"];
        let p = parse_poly("l^3 - t*l + 5*t^2", &vars).unwrap();
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs_in(&p, 1, &cs), p);
    }
}

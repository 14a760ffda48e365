//! Ruled surfaces P(O + O(e)) over P^1, their sections, and horizontal divisors
//! presented by coefficient forms phi_0 x^d + phi_1 x^(d-1) y + ... + phi_d y^d.
//!
//! Binary forms in (t0, t1) are stored through the affine chart t = t1/t0 together
//! with their declared degree, so the point t = inf ([0:1]) is never lost.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    factor_rational, parse::parse_poly, AlgebraError, BasePoint, LocalJet, Nf, NumberField, Poly, Rational,
    UPoly, Valuation,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuledError {
    #[error("empty section list")]
    EmptySectionList,
    #[error("section is a component")]
    SectionIsComponent,
    #[error("form of degree {found} where degree {expected} was required")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("infinity section not allowed here")]
    InfiniteSection,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A binary form of fixed degree in (t0, t1).
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    degree: u32,
    chart: UPoly<Rational>,
}

impl BinaryForm {
    /// `chart` is the form with t0 = 1, a polynomial in t of degree at most `degree`.
    pub fn new(degree: u32, chart: UPoly<Rational>) -> Result<Self, RuledError> {
        if chart.deg0() > degree as usize {
            return Err(RuledError::DegreeMismatch { expected: degree, found: chart.deg0() as u32 });
        }
        Ok(BinaryForm { degree, chart })
    }

    pub fn zero(degree: u32) -> Self {
        BinaryForm { degree, chart: UPoly::zero(()) }
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm { degree: 0, chart: UPoly::constant(c) }
    }

    pub fn from_ints(degree: u32, chart: &[i64]) -> Result<Self, RuledError> {
        BinaryForm::new(degree, UPoly::from_ints(chart))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn chart(&self) -> &UPoly<Rational> {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.chart.is_zero()
    }

    /// Homogeneous polynomial in the variables (t0, t1).
    pub fn to_poly(&self) -> Poly {
        let d = self.degree;
        Poly::from_terms(
            &["t0", "t1"],
            self.chart.coeffs().iter().enumerate().map(|(j, c)| (vec![d - j as u32, j as u32], c.clone())),
        )
    }

    /// Reads a homogeneous form in (t0, t1) of the given degree. The affine
    /// variable `t` is also accepted and homogenized.
    pub fn parse(s: &str, degree: u32) -> Result<Self, RuledError> {
        let p = parse_poly(s, &["t0", "t1", "t"])?;
        let uses_t = p.depends_on(2);
        if uses_t && (p.depends_on(0) || p.depends_on(1)) {
            return Err(AlgebraError::Parse(format!("mixed affine and homogeneous variables in '{s}'")).into());
        }
        if uses_t {
            return BinaryForm::new(degree, p.to_upoly(2)?);
        }
        let mut coeffs = vec![Rational::zero(); degree as usize + 1];
        for (m, c) in p.terms() {
            if m.0[0] + m.0[1] != degree {
                return Err(RuledError::DegreeMismatch { expected: degree, found: m.0[0] + m.0[1] });
            }
            coeffs[m.0[1] as usize] = c.clone();
        }
        BinaryForm::new(degree, UPoly::new((), coeffs))
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        BinaryForm { degree: self.degree, chart: self.chart.add(&other.chart) }
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "subtracting forms of different degree");
        BinaryForm { degree: self.degree, chart: self.chart.sub(&other.chart) }
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm { degree: self.degree, chart: self.chart.neg() }
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm { degree: self.degree, chart: self.chart.scale(c) }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm { degree: self.degree + other.degree, chart: self.chart.mul(&other.chart) }
    }

    pub fn pow(&self, k: u32) -> BinaryForm {
        BinaryForm { degree: self.degree * k, chart: self.chart.pow(k) }
    }

    /// Polynomial in the chart s = t0/t1 around t = inf.
    pub fn chart_at_infinity(&self) -> UPoly<Rational> {
        let d = self.degree as usize;
        let coeffs = (0..=d).map(|j| self.chart.coeff(d - j)).collect();
        UPoly::new((), coeffs)
    }

    /// Polynomial in the local chart of `p`: t for finite points, s = t0/t1 at infinity.
    pub fn chart_for(&self, p: &BasePoint) -> UPoly<Rational> {
        match p {
            BasePoint::Infinity => self.chart_at_infinity(),
            _ => self.chart.clone(),
        }
    }

    /// Value at a base point in the matching chart.
    pub fn value_at(&self, p: &BasePoint) -> Nf {
        let k = p.field();
        let f: UPoly<Nf> = self.chart_for(p).map(k.clone(), |c| Nf::rational(&k, c.clone()));
        f.eval(&p.coordinate())
    }

    pub fn valuation_at(&self, p: &BasePoint) -> Valuation {
        crate::algebra::valuation_upoly(&self.chart, p, Some(self.degree as usize))
    }

    pub fn jet_at(&self, p: &BasePoint, truncation_order: usize) -> LocalJet {
        LocalJet::expand(p.clone(), &self.chart_for(p), truncation_order)
    }

    /// Zeros on P^1 with multiplicity, one Galois representative per irreducible factor.
    /// Order: rational points ascending, then algebraic by degree, then infinity.
    pub fn zeros(&self) -> Result<Vec<(BasePoint, u32)>, RuledError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial.into());
        }
        let mut out = Vec::new();
        if self.chart.deg0() > 0 {
            for (g, m) in factor_rational(&self.chart).factors {
                out.push((point_of_factor(&g)?, m));
            }
        }
        let at_inf = self.degree as usize - self.chart.deg0();
        if at_inf > 0 {
            out.push((BasePoint::Infinity, at_inf as u32));
        }
        out.sort_by_key(|(p, _)| p.order_key());
        Ok(out)
    }
}

/// The closed point cut out by an irreducible chart polynomial.
pub fn point_of_factor(g: &UPoly<Rational>) -> Result<BasePoint, RuledError> {
    match g.deg0() {
        0 => Err(RuledError::InvalidDivisor("constant factor has no zero".into())),
        1 => Ok(BasePoint::Rational(-g.coeff(0) / g.coeff(1))),
        _ => Ok(BasePoint::Algebraic(NumberField::new(g)?)),
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// P(O + O(e)) over P^1 with base coordinates (t0, t1) and fiber coordinates (x, y).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuledSurface {
    pub twist_e: u32,
}

impl RuledSurface {
    pub const BASE_COORDS: [&'static str; 2] = ["t0", "t1"];
    pub const FIBER_COORDS: [&'static str; 2] = ["x", "y"];

    pub fn new(twist_e: u32) -> Self {
        RuledSurface { twist_e }
    }

    pub fn zero_section(&self) -> Section {
        Section::Finite(BinaryForm::zero(self.twist_e))
    }
}

/// A section x = s(t0, t1) y, with s a form of degree e, or the infinity section y = 0.
#[derive(Clone, Debug, PartialEq)]
pub enum Section {
    Finite(BinaryForm),
    Infinity,
}

impl Section {
    pub fn form(&self) -> Option<&BinaryForm> {
        match self {
            Section::Finite(f) => Some(f),
            Section::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Section::Infinity)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Finite(s) => write!(f, "{s}"),
            Section::Infinity => write!(f, "inf"),
        }
    }
}

/// A named section; names survive pushes through fiberwise maps.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSection {
    pub label: String,
    pub section: Section,
}

impl LabeledSection {
    pub fn new(label: impl Into<String>, section: Section) -> Self {
        LabeledSection { label: label.into(), section }
    }
}

pub type SectionList = Vec<LabeledSection>;

/// Horizontal divisor sum_i phi_i x^(d-i) y^i = 0 with deg phi_i = i * e.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalDivisor {
    twist_e: u32,
    phis: Vec<BinaryForm>,
}

impl HorizontalDivisor {
    pub fn new(twist_e: u32, phis: Vec<BinaryForm>) -> Result<Self, RuledError> {
        if phis.len() < 2 {
            return Err(RuledError::InvalidDivisor("fiber degree must be at least 1".into()));
        }
        for (i, phi) in phis.iter().enumerate() {
            let want = i as u32 * twist_e;
            if phi.degree() != want {
                return Err(RuledError::DegreeMismatch { expected: want, found: phi.degree() });
            }
        }
        if phis[0].is_zero() {
            return Err(RuledError::InvalidDivisor("phi_0 must be a nonzero constant".into()));
        }
        Ok(HorizontalDivisor { twist_e, phis })
    }

    /// Reads coefficient forms given as text.
    pub fn parse(twist_e: u32, phis: &[impl AsRef<str>]) -> Result<Self, RuledError> {
        let forms = phis
            .iter()
            .enumerate()
            .map(|(i, s)| BinaryForm::parse(s.as_ref(), i as u32 * twist_e))
            .collect::<Result<Vec<_>, _>>()?;
        HorizontalDivisor::new(twist_e, forms)
    }

    pub fn surface(&self) -> RuledSurface {
        RuledSurface::new(self.twist_e)
    }

    pub fn twist_e(&self) -> u32 {
        self.twist_e
    }

    pub fn fiber_degree(&self) -> usize {
        self.phis.len() - 1
    }

    pub fn phis(&self) -> &[BinaryForm] {
        &self.phis
    }

    /// Rescaled so phi_0 = 1.
    pub fn normalized(&self) -> HorizontalDivisor {
        let c = self.phis[0].chart().coeff(0).recip();
        HorizontalDivisor { twist_e: self.twist_e, phis: self.phis.iter().map(|p| p.scale(&c)).collect() }
    }

    /// Chart polynomial sum_i phi_i(1, t) l^(d-i) in the variables (t, l), l = x/y.
    pub fn fiber_poly(&self) -> Poly {
        let d = self.fiber_degree() as u32;
        let mut terms = Vec::new();
        for (i, phi) in self.phis.iter().enumerate() {
            for (j, c) in phi.chart().coeffs().iter().enumerate() {
                terms.push((vec![j as u32, d - i as u32], c.clone()));
            }
        }
        Poly::from_terms(&["t", "l"], terms)
    }

    /// Inverse of `fiber_poly` for a polynomial in (t, l) of l-degree d and the given twist.
    pub fn from_fiber_poly(twist_e: u32, f: &Poly) -> Result<Self, RuledError> {
        let li = f.var_index("l")?;
        let coeffs = f.coeffs_in(li);
        if coeffs.len() < 2 {
            return Err(RuledError::InvalidDivisor("fiber degree must be at least 1".into()));
        }
        let d = coeffs.len() - 1;
        let ti = f.var_index("t")?;
        let phis = (0..=d)
            .map(|i| {
                let c = &coeffs[d - i];
                BinaryForm::new(i as u32 * twist_e, c.to_upoly(ti)?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        HorizontalDivisor::new(twist_e, phis)
    }

    /// Restriction to the fiber over `p`, as a polynomial in l (degree d since phi_0 is constant).
    pub fn restrict_to_fiber(&self, p: &BasePoint) -> UPoly<Nf> {
        let k = p.field();
        let d = self.fiber_degree();
        let coeffs = (0..=d).map(|j| self.phis[d - j].value_at(p)).collect();
        UPoly::new(k, coeffs)
    }

    /// sum_i phi_i s^(d-i): the form whose zeros are the intersections with x = s y.
    pub fn substitute_section(&self, s: &BinaryForm) -> BinaryForm {
        let d = self.fiber_degree() as u32;
        let mut acc = BinaryForm::zero(d * self.twist_e);
        for (i, phi) in self.phis.iter().enumerate() {
            acc = acc.add(&phi.mul(&s.pow(d - i as u32)));
        }
        acc
    }

    /// Intersection points with a section, with multiplicities.
    pub fn intersection_points(&self, s: &Section) -> Result<Vec<(BasePoint, u32)>, RuledError> {
        match s {
            Section::Infinity => {
                if self.phis[0].is_zero() {
                    return Err(RuledError::SectionIsComponent);
                }
                // y = 0 meets the divisor where phi_0 vanishes
                if self.phis[0].degree() == 0 {
                    Ok(Vec::new())
                } else {
                    self.phis[0].zeros()
                }
            }
            Section::Finite(f) => {
                if f.degree() != self.twist_e {
                    return Err(RuledError::DegreeMismatch { expected: self.twist_e, found: f.degree() });
                }
                let g = self.substitute_section(f);
                if g.is_zero() {
                    return Err(RuledError::SectionIsComponent);
                }
                g.zeros()
            }
        }
    }

    /// True when the generic fiber has d distinct points. A reduced fiber over a small
    /// integer settles it; otherwise the discriminant decides.
    pub fn is_reduced(&self) -> Result<bool, RuledError> {
        if reduced_fiber_point(self).is_some() {
            return Ok(true);
        }
        let f = self.fiber_poly();
        let disc = crate::algebra::discriminant(&f, "l")?;
        Ok(!disc.is_zero())
    }

    /// Attempts to write the divisor as a sum of distinct sections defined over Q.
    ///
    /// Any root in Q(t) of a monic polynomial over Q[t] is a polynomial of degree at most e,
    /// so it is determined by its e-jet at a point where the fiber is reduced.
    pub fn split_into_sections(&self) -> Result<Option<Vec<BinaryForm>>, RuledError> {
        let b = self.normalized();
        let d = b.fiber_degree();
        let e = self.twist_e as usize;
        if d == 1 {
            return Ok(Some(vec![b.phis[1].neg()]));
        }
        // a reduced divisor always has a reduced fiber over some small integer
        let base = match reduced_fiber_point(&b) {
            Some(a) => a,
            None => return Ok(None),
        };
        let fiber = b.restrict_rational(&base);
        let roots = crate::algebra::rational_roots(&fiber);
        if roots.len() < d {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(d);
        for r in roots {
            let series = newton_lift(&b, &base, r, e + 1);
            // shift back: s(t) = series(t - base)
            let chart = series.taylor_shift(&-base.clone());
            if chart.deg0() > e {
                return Ok(None);
            }
            let form = BinaryForm::new(self.twist_e, chart)?;
            if !b.substitute_section(&form).is_zero() {
                return Ok(None);
            }
            out.push(form);
        }
        out.sort_by(cmp_forms);
        Ok(Some(out))
    }

    fn restrict_rational(&self, a: &Rational) -> UPoly<Rational> {
        let d = self.fiber_degree();
        let coeffs = (0..=d).map(|j| self.phis[d - j].chart().eval(a)).collect();
        UPoly::new((), coeffs)
    }
}

/// A small integer where the fiber has d distinct points; exists because the
/// discriminant is a nonzero polynomial.
fn reduced_fiber_point(b: &HorizontalDivisor) -> Option<Rational> {
    let d = b.fiber_degree();
    for k in 0..(4 * d * (b.twist_e as usize + 1) + 8) as i64 {
        let a = Rational::from_integer(if k % 2 == 0 { (k / 2).into() } else { (-(k + 1) / 2).into() });
        let f = b.restrict_rational(&a);
        if f.gcd(&f.derivative()).deg0() == 0 {
            return Some(a);
        }
    }
    None
}

/// Power-series root of the fiber polynomial at t = base + u through l = r, mod u^n.
fn newton_lift(b: &HorizontalDivisor, base: &Rational, r: Rational, n: usize) -> UPoly<Rational> {
    let d = b.fiber_degree();
    // coefficients of l^(d-i) as series in u
    let shifted: Vec<UPoly<Rational>> = b.phis.iter().map(|p| p.chart().taylor_shift(base)).collect();
    let trunc = |p: UPoly<Rational>| -> UPoly<Rational> {
        let mut c = p.into_coeffs();
        c.truncate(n);
        UPoly::new((), c)
    };
    let eval = |s: &UPoly<Rational>, deriv: bool| -> UPoly<Rational> {
        let mut acc = UPoly::zero(());
        for (i, phi) in shifted.iter().enumerate() {
            let k = d - i;
            let term = if deriv {
                if k == 0 {
                    continue;
                }
                trunc(phi.mul(&s.pow(k as u32 - 1))).scale(&Rational::from_integer(k.into()))
            } else {
                trunc(phi.mul(&s.pow(k as u32)))
            };
            acc = acc.add(&term);
        }
        trunc(acc)
    };
    let mut s = UPoly::constant(r);
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let f = eval(&s, false);
        let fp = eval(&s, true);
        let step = trunc(f.mul(&series_inverse(&fp, n)));
        s = trunc(s.sub(&step));
    }
    s
}

/// Inverse of a power series with nonzero constant term, mod u^n.
fn series_inverse(f: &UPoly<Rational>, n: usize) -> UPoly<Rational> {
    let c0 = f.coeff(0);
    assert!(!c0.is_zero(), "series not invertible");
    let mut inv = vec![c0.recip()];
    for k in 1..n {
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc += f.coeff(j) * &inv[k - j];
        }
        inv.push(-acc * &inv[0]);
    }
    UPoly::new((), inv)
}

/// Deterministic order on forms: by degree, then chart coefficients from the top.
pub fn cmp_forms(a: &BinaryForm, b: &BinaryForm) -> std::cmp::Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        let n = a.chart.deg0().max(b.chart.deg0());
        for i in (0..=n).rev() {
            let o = a.chart.coeff(i).cmp(&b.chart.coeff(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// The divisor sum S_i of finite sections: prod (x - s_i y).
pub fn divisor_from_sections(twist_e: u32, sections: &[Section]) -> Result<HorizontalDivisor, RuledError> {
    if sections.is_empty() {
        return Err(RuledError::EmptySectionList);
    }
    let mut phis = vec![BinaryForm::constant(Rational::one())];
    for s in sections {
        let f = s.form().ok_or(RuledError::InfiniteSection)?;
        if f.degree() != twist_e {
            return Err(RuledError::DegreeMismatch { expected: twist_e, found: f.degree() });
        }
        // multiply sum phi_i x^(k-i) y^i by (x - s y)
        let k = phis.len();
        let mut next = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let deg = i as u32 * twist_e;
            let mut c = BinaryForm::zero(deg);
            if i < k {
                c = c.add(&phis[i]);
            }
            if i > 0 {
                c = c.sub(&phis[i - 1].mul(f));
            }
            next.push(c);
        }
        phis = next;
    }
    HorizontalDivisor::new(twist_e, phis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn form(e: u32, c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(e, c).unwrap()
    }

    #[test]
    fn divisor_of_zero_section() {
        let h = divisor_from_sections(0, &[Section::Finite(form(0, &[]))]).unwrap();
        assert_eq!(h.phis(), &[form(0, &[1]), form(0, &[])]);
    }

    #[test]
    fn divisor_of_zero_and_t() {
        let h = divisor_from_sections(1, &[Section::Finite(form(1, &[])), Section::Finite(form(1, &[0, 1]))]).unwrap();
        assert_eq!(h.phis(), &[form(0, &[1]), form(1, &[0, -1]), form(2, &[])]);
        assert_eq!(h.fiber_poly().to_string(), "-t*l + l^2");
    }

    #[test]
    fn divisor_of_plus_minus_one() {
        let h = divisor_from_sections(0, &[Section::Finite(form(0, &[1])), Section::Finite(form(0, &[-1]))]).unwrap();
        assert_eq!(h.phis(), &[form(0, &[1]), form(0, &[]), form(0, &[-1])]);
        assert_eq!(divisor_from_sections(0, &[]), Err(RuledError::EmptySectionList));
    }

    #[test]
    fn restriction_to_fibers() {
        let h = HorizontalDivisor::parse(1, &["1", "0", "-t0*t1"]).unwrap();
        let at4 = h.restrict_to_fiber(&BasePoint::Rational(rat(4)));
        assert_eq!(at4.render("x"), "x^2 - 4");
        let at0 = h.restrict_to_fiber(&BasePoint::Rational(rat(0)));
        assert_eq!(at0.render("x"), "x^2");
        let g = HorizontalDivisor::parse(1, &["1", "-t", "0"]).unwrap();
        assert_eq!(g.restrict_to_fiber(&BasePoint::Rational(rat(0))).render("x"), "x^2");
    }

    #[test]
    fn intersections() {
        let h = divisor_from_sections(1, &[Section::Finite(form(1, &[])), Section::Finite(form(1, &[0, 1]))]).unwrap();
        let pts = h.intersection_points(&Section::Finite(form(1, &[]))).unwrap_err();
        assert_eq!(pts, RuledError::SectionIsComponent);
        // the divisor {t} alone meets the zero section once at t = 0
        let single = divisor_from_sections(1, &[Section::Finite(form(1, &[0, 1]))]).unwrap();
        let pts = single.intersection_points(&Section::Finite(form(1, &[]))).unwrap();
        assert_eq!(pts, vec![(BasePoint::Rational(rat(0)), 1)]);
        let sq = HorizontalDivisor::parse(1, &["1", "0", "-t^2"]).unwrap();
        assert_eq!(sq.intersection_points(&Section::Finite(form(1, &[0, 1]))), Err(RuledError::SectionIsComponent));
        let pm = HorizontalDivisor::parse(0, &["1", "0", "-1"]).unwrap();
        assert_eq!(pm.intersection_points(&Section::Finite(form(0, &[]))).unwrap(), vec![]);
        assert!(pm.intersection_points(&Section::Infinity).unwrap().is_empty());
    }

    #[test]
    fn zeros_include_infinity() {
        // t0 * t1^2 - t1^3 in chart t^2 - t^3 : zeros at 0 (twice), 1, and nothing at infinity
        let f = form(3, &[0, 0, 1, -1]);
        let z = f.zeros().unwrap();
        assert_eq!(z, vec![(BasePoint::Rational(rat(0)), 2), (BasePoint::Rational(rat(1)), 1)]);
        let g = form(3, &[0, 1]);
        let z = g.zeros().unwrap();
        assert_eq!(z.last().unwrap(), &(BasePoint::Infinity, 2));
    }

    #[test]
    fn parse_homogeneous_and_affine() {
        let a = BinaryForm::parse("t0*t1 - 2*t1^2", 2).unwrap();
        let b = BinaryForm::parse("t - 2*t^2", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "t0*t1 - 2*t1^2");
        assert!(BinaryForm::parse("t0 + t1^2", 2).is_err());
    }

    #[test]
    fn splitting_test() {
        let h = divisor_from_sections(2, &[Section::Finite(form(2, &[1, 0, 1])), Section::Finite(form(2, &[0, -3, 2]))])
            .unwrap();
        let parts = h.split_into_sections().unwrap().unwrap();
        assert_eq!(parts, vec![form(2, &[1, 0, 1]), form(2, &[0, -3, 2])]);
        let cusp = HorizontalDivisor::parse(1, &["1", "0", "-t0*t1", "0"]).unwrap();
        assert_eq!(cusp.split_into_sections().unwrap(), None);
        let pm = HorizontalDivisor::parse(0, &["1", "0", "-1"]).unwrap();
        assert_eq!(pm.split_into_sections().unwrap().unwrap(), vec![form(0, &[-1]), form(0, &[1])]);
    }

    #[test]
    fn values_at_infinity() {
        let f = form(2, &[1, 2, 3]);
        assert_eq!(f.value_at(&BasePoint::Infinity).as_rational(), Some(rat(3)));
        assert_eq!(f.chart_at_infinity(), UPoly::from_ints(&[3, 2, 1]));
    }
}

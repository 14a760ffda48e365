//! Local cyclic-cover types at crossings of the branch curve, Hirzebruch-Jung chains
//! and unimodular fans, and assembly of the final resolution manifest.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    factor_rational, rational_roots, resultant, squarefree_layers, AlgebraError, BasePoint, Nf, Poly, Rational,
    Scalar, UPoly,
};
use crate::ruled::{point_of_factor, HorizontalDivisor, RuledError};
use crate::stabilization::{snc_certificate, SncCertificate, SncFailure, StableFamily};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("invalid cyclic quotient type ({m}, {q})")]
    InvalidType { m: u32, q: u32 },
    #[error("invalid branching datum: {0}")]
    InvalidDatum(String),
    #[error("local model unsupported: supply branching data manually ({0})")]
    Unsupported(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error(transparent)]
    Snc(#[from] SncFailure),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

/// Local model z^m = u^a v^b at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingDatum {
    pub m: u32,
    pub a: u32,
    pub b: u32,
}

impl BranchingDatum {
    pub fn new(m: u32, a: u32, b: u32) -> Result<Self, ToricError> {
        if m == 0 {
            return Err(ToricError::InvalidDatum("cover order must be positive".into()));
        }
        Ok(BranchingDatum { m, a, b })
    }
}

/// The singularity 1/m(1, q); (1, 0) is a smooth point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicQuotientType {
    pub m: u32,
    pub q: u32,
}

impl CyclicQuotientType {
    pub const SMOOTH: CyclicQuotientType = CyclicQuotientType { m: 1, q: 0 };

    pub fn is_smooth(&self) -> bool {
        self.m == 1
    }
}

/// Two-dimensional fan given by its rays in counterclockwise order; cones are consecutive pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan2D {
    pub rays: Vec<[i64; 2]>,
}

impl Fan2D {
    pub fn cones(&self) -> Vec<([i64; 2], [i64; 2])> {
        self.rays.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn determinants(&self) -> Vec<i64> {
        self.cones().iter().map(|(u, v)| det(*u, *v)).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinants().iter().all(|d| d.abs() == 1)
    }
}

pub fn det(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let e = a.rem_euclid(n).extended_gcd(&n);
    e.x.rem_euclid(n)
}

/// Type of the normalization of z^m = u^a v^b, read off the lattice
/// N' = { n in Z^2 : a n1 + b n2 = 0 mod m } and the positive quadrant.
pub fn local_cover_type(d: &BranchingDatum) -> CyclicQuotientType {
    if d.m <= 1 || (d.a == 0 && d.b == 0) {
        return CyclicQuotientType::SMOOTH;
    }
    let g = (d.m as i64).gcd(&(d.a as i64)).gcd(&(d.b as i64));
    let (m, a, b) = (d.m as i64 / g, d.a as i64 / g, d.b as i64 / g);
    let ga = m.gcd(&a);
    let k1 = m / ga;
    // w = (n1, ga) completes the primitive ray generator (k1, 0) to a basis of N'
    let n1 = if k1 == 1 { 0 } else { (-b * mod_inverse(a / ga, k1)).rem_euclid(k1) };
    let k2 = m / m.gcd(&b);
    let beta = k2 / ga;
    if beta == 1 {
        return CyclicQuotientType::SMOOTH;
    }
    let q = (beta * n1 / k1).rem_euclid(beta);
    CyclicQuotientType { m: beta as u32, q: q as u32 }
}

/// m/q = b1 - 1/(b2 - 1/(...)).
pub fn hj_fraction(m: u32, q: u32) -> Vec<u32> {
    let (mut m, mut q) = (m as u64, q as u64);
    let mut out = Vec::new();
    while q > 0 {
        let b = m.div_ceil(q);
        out.push(b as u32);
        (m, q) = (q, b * q - m);
    }
    out
}

/// Evaluates b1 - 1/(b2 - 1/(...)) exactly.
pub fn hj_evaluate(chain: &[u32]) -> Option<Rational> {
    let mut acc: Option<Rational> = None;
    for &b in chain.iter().rev() {
        let b = Rational::from_integer(b.into());
        acc = Some(match acc {
            None => b,
            Some(x) if num_traits::Zero::is_zero(&x) => return None,
            Some(x) => b - x.recip(),
        });
    }
    acc
}

/// Hirzebruch-Jung chain and the unimodular subdivision of the cone <(1,0), (-q, m)>.
pub fn hj_resolve(t: &CyclicQuotientType) -> Result<(Vec<u32>, Fan2D), ToricError> {
    if t.m < 2 || t.q == 0 || t.q >= t.m || t.m.gcd(&t.q) != 1 {
        return Err(ToricError::InvalidType { m: t.m, q: t.q });
    }
    let chain = hj_fraction(t.m, t.q);
    Ok((chain.clone(), fan_from_chain(&chain)))
}

/// Rays v0 = (1,0), v1 = (0,1), v_{i+1} = b_i v_i - v_{i-1}.
pub fn fan_from_chain(chain: &[u32]) -> Fan2D {
    let mut rays = vec![[1, 0], [0, 1]];
    for (i, &b) in chain.iter().enumerate() {
        let (u, v) = (rays[i], rays[i + 1]);
        rays.push([b as i64 * v[0] - u[0], b as i64 * v[1] - u[1]]);
    }
    Fan2D { rays }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    /// (t, l): finite base, finite fiber coordinate.
    Affine,
    /// (s, l) with s = 1/t; only s = 0 is new.
    AffineAtInfinity,
    /// (t, y) with y = 1/l; only y = 0 is new.
    Section,
    /// (s, y); only s = y = 0 is new.
    SectionAtInfinity,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::Affine, Chart::AffineAtInfinity, Chart::Section, Chart::SectionAtInfinity];

    pub fn name(self) -> &'static str {
        match self {
            Chart::Affine => "t,l",
            Chart::AffineAtInfinity => "s,l",
            Chart::Section => "t,y",
            Chart::SectionAtInfinity => "s,y",
        }
    }

    fn base_at_infinity(self) -> bool {
        matches!(self, Chart::AffineAtInfinity | Chart::SectionAtInfinity)
    }

    fn fiber_at_infinity(self) -> bool {
        matches!(self, Chart::Section | Chart::SectionAtInfinity)
    }
}

/// Cyclic cover z^order = (branch form) of the ruled surface, analysed chart by chart.
/// `cyclic = false` marks covers whose local models must come from overrides.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverModel {
    pub order: u32,
    pub branch: HorizontalDivisor,
    pub cyclic: bool,
}

impl CoverModel {
    /// Branch polynomial in variables (t, l) of the chart, plus the multiplicity of the
    /// line l = 0 when it is the infinity section.
    pub fn chart_layers(&self, chart: Chart) -> Result<Vec<(Poly, u32)>, ToricError> {
        let vars = ["t", "l"];
        let n = self.branch.fiber_degree();
        let mut terms = Vec::new();
        for (i, phi) in self.branch.phis().iter().enumerate() {
            let c = if chart.base_at_infinity() { phi.chart_at_infinity() } else { phi.chart().clone() };
            let power = if chart.fiber_at_infinity() { i } else { n - i };
            for (j, a) in c.coeffs().iter().enumerate() {
                if !num_traits::Zero::is_zero(a) {
                    terms.push((vec![j as u32, power as u32], a.clone()));
                }
            }
        }
        let f = Poly::from_terms(&vars, terms);
        let mut layers: Vec<(Poly, u32)> =
            squarefree_layers(&f)?.into_iter().filter(|(p, _)| !p.is_constant()).collect();
        if chart.fiber_at_infinity() {
            let mu = (self.order - (n as u32 % self.order)) % self.order;
            if mu > 0 {
                let l = Poly::var(&vars, "l")?;
                match layers.iter_mut().find(|(_, m)| *m == mu) {
                    Some((p, _)) => *p = p.mul(&l),
                    None => layers.push((l, mu)),
                }
            }
        }
        Ok(layers)
    }
}

/// A singular point of the (reduced) branch curve in one chart. Coordinates live in
/// `point.field()`; one Galois representative stands for its conjugates.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub chart: Chart,
    pub point: BasePoint,
    pub t: Nf,
    pub l: Nf,
}

impl Crossing {
    pub fn key(&self) -> String {
        let field = match &self.point {
            BasePoint::Algebraic(_) => format!(" in {}", self.point.key().trim_start_matches("t=")),
            _ => String::new(),
        };
        format!("{}@({}, {}){}", self.chart.name(), self.t, self.l, field)
    }

    pub fn conjugates(&self) -> usize {
        self.point.conjugates()
    }
}

/// Singular points of the reduced branch curve, one chart at a time, each listed once.
pub fn find_crossings(model: &CoverModel) -> Result<Vec<Crossing>, ToricError> {
    let mut out = Vec::new();
    for chart in Chart::ALL {
        let layers = model.chart_layers(chart)?;
        if layers.is_empty() {
            continue;
        }
        let mut u = layers[0].0.clone();
        for (p, _) in &layers[1..] {
            u = u.mul(p);
        }
        for c in singular_points(&u, chart)? {
            let new_here = (!chart.base_at_infinity() || c.t.is_zero()) && (!chart.fiber_at_infinity() || c.l.is_zero());
            if new_here {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn eval_upoly_in_l(f: &Poly, t0: &Nf) -> UPoly<Nf> {
    let k = t0.field().clone();
    let zero = Nf::zero_in(&k);
    let coeffs = f.coeffs_in(1).iter().map(|c| c.eval(&[t0.clone(), zero.clone()])).collect();
    UPoly::new(k, coeffs)
}

fn nf_roots(h: &UPoly<Nf>, chart: Chart) -> Result<Vec<Nf>, ToricError> {
    let k = h.ctx().clone();
    match h.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![h.coeff(0).neg().mul(&h.coeff(1).inv())]),
        Some(d) => {
            let rational: Option<Vec<Rational>> = h.coeffs().iter().map(Nf::as_rational).collect();
            if let Some(c) = rational {
                let roots = rational_roots(&UPoly::new((), c));
                if roots.len() == d {
                    return Ok(roots.into_iter().map(|r| Nf::rational(&k, r)).collect());
                }
            }
            Err(ToricError::Unsupported(format!(
                "several singular points on one fiber of chart {} are not rational over their base field",
                chart.name()
            )))
        }
    }
}

fn singular_points(u: &Poly, chart: Chart) -> Result<Vec<Crossing>, ToricError> {
    if !u.depends_on(1) {
        return Ok(Vec::new());
    }
    let ut = u.derivative(0);
    let ul = u.derivative(1);
    let r = resultant(u, &ul, "l")?;
    if r.is_zero() {
        return Err(ToricError::Unsupported(format!("branch curve not reduced in chart {}", chart.name())));
    }
    let r = if r.is_constant() { return Ok(Vec::new()) } else { r.to_upoly(0)? };
    let mut found = Vec::new();
    for (factor, _) in factor_rational(&r).factors {
        let point = point_of_factor(&factor)?;
        let t0 = point.coordinate();
        let mut h = UPoly::zero(point.field());
        for g in [u, &ul, &ut] {
            h = h.gcd(&eval_upoly_in_l(g, &t0));
        }
        for l0 in nf_roots(&h, chart)? {
            found.push(Crossing { chart, point: point.clone(), t: t0.clone(), l: l0 });
        }
    }
    Ok(found)
}

fn gradient(f: &Poly, p: &[Nf; 2]) -> [Nf; 2] {
    [f.derivative(0).eval(p), f.derivative(1).eval(p)]
}

fn hessian_det(f: &Poly, p: &[Nf; 2]) -> Nf {
    let ft = f.derivative(0);
    let fl = f.derivative(1);
    let a = ft.derivative(0).eval(p);
    let b = ft.derivative(1).eval(p);
    let c = fl.derivative(1).eval(p);
    a.mul(&c).sub(&b.mul(&b))
}

/// Local model at a crossing: two transverse smooth layers give (m; mu_i, mu_j), a nodal
/// layer gives (m; mu, mu). Anything else needs an override.
pub fn local_branch_data(model: &CoverModel, crossing: &Crossing) -> Result<BranchingDatum, ToricError> {
    let unsupported = || ToricError::Unsupported(crossing.key());
    if !model.cyclic {
        return Err(unsupported());
    }
    let p = [crossing.t.clone(), crossing.l.clone()];
    let through: Vec<(Poly, u32)> =
        model.chart_layers(crossing.chart)?.into_iter().filter(|(f, _)| f.eval(&p).is_zero()).collect();
    let smooth = |f: &Poly| gradient(f, &p).iter().any(|g| !g.is_zero());
    match through.as_slice() {
        [(f, mu)] if !smooth(f) && !hessian_det(f, &p).is_zero() => BranchingDatum::new(model.order, *mu, *mu),
        [(f, mu), (g, nu)] if smooth(f) && smooth(g) => {
            let (df, dg) = (gradient(f, &p), gradient(g, &p));
            if df[0].mul(&dg[1]).sub(&df[1].mul(&dg[0])).is_zero() {
                Err(unsupported())
            } else {
                BranchingDatum::new(model.order, *mu, *nu)
            }
        }
        _ => Err(unsupported()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchingOverride {
    pub crossing: String,
    pub m: u32,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossingData {
    pub crossing: String,
    pub conjugates: usize,
    pub datum: BranchingDatum,
    pub overridden: bool,
}

/// Branching data at every crossing; overrides take precedence and must name a crossing.
pub fn branch_data(model: &CoverModel, overrides: &[BranchingOverride]) -> Result<Vec<CrossingData>, ToricError> {
    let crossings = find_crossings(model)?;
    let keys: BTreeSet<String> = crossings.iter().map(Crossing::key).collect();
    if let Some(o) = overrides.iter().find(|o| !keys.contains(&o.crossing)) {
        return Err(ToricError::InvalidDatum(format!("override for unknown crossing {}", o.crossing)));
    }
    let mut out = Vec::new();
    for c in &crossings {
        let key = c.key();
        let (datum, overridden) = match overrides.iter().find(|o| o.crossing == key) {
            Some(o) => (BranchingDatum::new(o.m, o.a, o.b)?, true),
            None => (local_branch_data(model, c)?, false),
        };
        out.push(CrossingData { crossing: key, conjugates: c.conjugates(), datum, overridden });
    }
    out.sort_by(|a, b| a.crossing.cmp(&b.crossing));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalChain {
    pub crossing: String,
    pub conjugates: usize,
    pub datum: BranchingDatum,
    pub cq_type: CyclicQuotientType,
    pub chain: Vec<u32>,
    pub self_intersections: Vec<i64>,
    pub fan: Fan2D,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionManifest {
    pub modifications: Vec<String>,
    pub chains: Vec<ExceptionalChain>,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionCertificate {
    pub snc: SncCertificate,
    pub chains_checked: usize,
    pub cones_checked: usize,
}

/// Re-derives everything a chain claims from its datum.
pub fn check_chain(c: &ExceptionalChain) -> Result<usize, String> {
    let at = &c.crossing;
    let t = local_cover_type(&c.datum);
    if t != c.cq_type {
        return Err(format!("{at}: datum gives type ({}, {}), recorded ({}, {})", t.m, t.q, c.cq_type.m, c.cq_type.q));
    }
    if c.chain.iter().any(|&b| b < 2) {
        return Err(format!("{at}: chain entry below 2"));
    }
    if hj_evaluate(&c.chain) != Some(Rational::new(t.m.into(), t.q.into())) {
        return Err(format!("{at}: chain {:?} does not evaluate to {}/{}", c.chain, t.m, t.q));
    }
    let si: Vec<i64> = c.chain.iter().map(|&b| -(b as i64)).collect();
    if si != c.self_intersections {
        return Err(format!("{at}: self-intersections do not match the chain"));
    }
    if c.fan.rays.len() != c.chain.len() + 2 {
        return Err(format!("{at}: fan has {} rays for a chain of length {}", c.fan.rays.len(), c.chain.len()));
    }
    if c.fan.rays.first() != Some(&[1, 0]) || c.fan.rays.last() != Some(&[-(t.q as i64), t.m as i64]) {
        return Err(format!("{at}: fan does not span the cone of type ({}, {})", t.m, t.q));
    }
    for r in &c.fan.rays {
        if r[0].gcd(&r[1]) != 1 {
            return Err(format!("{at}: ray {r:?} not primitive"));
        }
    }
    if let Some(d) = c.fan.determinants().into_iter().find(|d| *d != 1) {
        return Err(format!("{at}: unimodularity fails, cone determinant {d}"));
    }
    for (i, &b) in c.chain.iter().enumerate() {
        let (u, v, w) = (c.fan.rays[i], c.fan.rays[i + 1], c.fan.rays[i + 2]);
        if [u[0] + w[0], u[1] + w[1]] != [b as i64 * v[0], b as i64 * v[1]] {
            return Err(format!("{at}: ray {} does not have self-intersection -{b}", i + 1));
        }
    }
    Ok(c.fan.rays.len() - 1)
}

/// Resolves every singular crossing and certifies the whole configuration.
pub fn assemble_resolution(
    fam: &StableFamily,
    data: &[CrossingData],
) -> Result<(ResolutionManifest, ResolutionCertificate), ToricError> {
    let snc = snc_certificate(fam)?;
    let mut seen = BTreeSet::new();
    let mut chains = Vec::new();
    for d in data {
        if !seen.insert(d.crossing.clone()) {
            return Err(ToricError::Certificate(format!("crossing {} listed twice", d.crossing)));
        }
        let t = local_cover_type(&d.datum);
        if t.is_smooth() {
            continue;
        }
        let (chain, fan) = hj_resolve(&t)?;
        chains.push(ExceptionalChain {
            crossing: d.crossing.clone(),
            conjugates: d.conjugates,
            datum: d.datum,
            cq_type: t,
            self_intersections: chain.iter().map(|&b| -(b as i64)).collect(),
            chain,
            fan,
        });
    }
    let mut cones = 0;
    for c in &chains {
        cones += check_chain(c).map_err(ToricError::Certificate)?;
    }
    let mut modifications: Vec<String> = fam
        .blowup_schedule
        .iter()
        .map(|b| format!("blow-up over {} creating {} vertex {} at level {}", b.point, b.kind.as_str(), b.vertex, b.level))
        .collect();
    modifications.extend(chains.iter().map(|c| format!("toric subdivision at {} with chain {:?}", c.crossing, c.chain)));
    let mut components = vec!["strict transform of the branch preimage".to_string()];
    components.extend(fam.sections.iter().map(|s| format!("section {}", s.label)));
    for t in &fam.special_fibers {
        for (i, v) in t.vertices.iter().enumerate() {
            components.push(format!("fiber {} {} {i}", t.point.key(), v.kind.as_str()));
        }
    }
    for c in &chains {
        for (i, b) in c.chain.iter().enumerate() {
            components.push(format!("exceptional curve {i} at {} with self-intersection -{b}", c.crossing));
        }
    }
    let cert = ResolutionCertificate { snc, chains_checked: chains.len(), cones_checked: cones };
    Ok((ResolutionManifest { modifications, chains, components }, cert))
}

//! Fiberwise polynomial maps p_B collapsing a horizontal divisor onto the zero
//! section, and the iteration that turns an arbitrary branch divisor into a union
//! of distinct sections plus the infinity section.

use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::algebra::{resultant, Poly, Rational, UPoly};
use crate::ruled::{BinaryForm, HorizontalDivisor, LabeledSection, RuledError, RuledSurface, Section, SectionList};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BelyiError {
    #[error("no critical locus")]
    NoCriticalLocus,
    #[error("map is fiberwise non-separable")]
    NonSeparable,
    #[error("degree guard exceeded: twist {twist} > {cap}")]
    DegreeGuard { twist: u32, cap: u32 },
    #[error("genericity failure after {0} draws")]
    GenericityFailure(u32),
    #[error("sections not distinct: {0} = {1}")]
    NotDistinct(String, String),
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

impl From<crate::algebra::AlgebraError> for BelyiError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        BelyiError::Ruled(e.into())
    }
}

/// eta -> sum_i phi_i eta^(d-i) from P(O + O(e)) to P(O + O(d e)), with phi_0 = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberwiseMap {
    pub source: RuledSurface,
    pub target: RuledSurface,
    coeffs: Vec<BinaryForm>,
}

impl FiberwiseMap {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BinaryForm] {
        &self.coeffs
    }

    /// The preimage of the target zero section, as a divisor on the source.
    pub fn zero_fiber_divisor(&self) -> HorizontalDivisor {
        HorizontalDivisor::new(self.source.twist_e, self.coeffs.clone()).expect("map coefficients form a divisor")
    }

    /// sum_i phi_i(1, t) eta^(d-i) in the variables (t, eta).
    pub fn chart_poly(&self) -> Poly {
        let d = self.degree() as u32;
        let mut terms = Vec::new();
        for (i, phi) in self.coeffs.iter().enumerate() {
            for (j, c) in phi.chart().coeffs().iter().enumerate() {
                terms.push((vec![j as u32, d - i as u32], c.clone()));
            }
        }
        Poly::from_terms(&["t", "eta"], terms)
    }

    /// Homogeneous expression (x : y) -> (sum_i phi_i x^(d-i) y^i : y^d) in (t, x, y).
    pub fn homogeneous_components(&self) -> (Poly, Poly) {
        let d = self.degree() as u32;
        let mut terms = Vec::new();
        for (i, phi) in self.coeffs.iter().enumerate() {
            for (j, c) in phi.chart().coeffs().iter().enumerate() {
                terms.push((vec![j as u32, d - i as u32, i as u32], c.clone()));
            }
        }
        let vars = ["t", "x", "y"];
        let first = Poly::from_terms(&vars, terms);
        let second = Poly::from_terms(&vars, [(vec![0, 0, d], Rational::one())]);
        (first, second)
    }

    /// Multiplicity of the source infinity section in the preimage of the target one.
    ///
    /// The target infinity section is y' = 0 with y' = y^d; it pulls back to d times y = 0
    /// exactly when the first component keeps its pure x^d term, i.e. phi_0 != 0.
    pub fn infinity_preimage_multiplicity(&self) -> Option<u32> {
        let (first, second) = self.homogeneous_components();
        let d = self.degree() as u32;
        let yi = 2;
        let pure_x = first.terms().any(|(m, _)| m.0[yi] == 0 && m.0[1] == d && m.0[0] == 0);
        if !pure_x {
            return None;
        }
        Some(second.degree_in(yi))
    }
}

/// The map whose zero fiber is `b`.
pub fn build_pb(b: &HorizontalDivisor) -> FiberwiseMap {
    let b = b.normalized();
    let d = b.fiber_degree() as u32;
    FiberwiseMap {
        source: b.surface(),
        target: RuledSurface::new(b.twist_e() * d),
        coeffs: b.phis().to_vec(),
    }
}

/// Divisor of the fiberwise derivative, normalized to leading coefficient 1.
pub fn critical_divisor(m: &FiberwiseMap) -> Result<HorizontalDivisor, BelyiError> {
    let d = m.degree();
    if d < 2 {
        return Err(BelyiError::NoCriticalLocus);
    }
    let dd = Rational::from_integer(d.into());
    let phis = (0..d)
        .map(|i| m.coeffs[i].scale(&(Rational::from_integer((d - i).into()) / &dd)))
        .collect();
    Ok(HorizontalDivisor::new(m.source.twist_e, phis)?)
}

/// Image of the critical divisor: the monic polynomial in w with roots m(beta) over the
/// critical points beta, i.e. Res_eta(m(eta) - w, m'(eta)) up to a constant factor.
///
/// Computed from the power sums of the critical values in Q[t][eta]/(m'/d), which keeps
/// all arithmetic univariate in t.
pub fn branch_image(m: &FiberwiseMap) -> Result<HorizontalDivisor, BelyiError> {
    let d = m.degree();
    if d < 2 {
        return Err(BelyiError::NoCriticalLocus);
    }
    let n = d - 1;
    let crit = critical_divisor(m)?;
    // monic c(eta) = eta^n + a_{n-1} eta^{n-1} + ... + a_0, stored low to high
    let c: Vec<UPoly<Rational>> = (0..=n).map(|j| crit.phis()[n - j].chart().clone()).collect();
    let ring = QuotientRing { modulus: c };
    let p = ring.root_power_sums();
    let map_coeffs: Vec<UPoly<Rational>> = (0..=d).map(|j| m.coeffs[d - j].chart().clone()).collect();
    let r = ring.reduce(map_coeffs);
    let mut power = ring.one();
    let mut sums = Vec::with_capacity(n + 1);
    sums.push(UPoly::constant(Rational::from_integer(n.into())));
    for _ in 1..=n {
        power = ring.mul(&power, &r);
        let mut acc = UPoly::zero(());
        for (j, pj) in p.iter().enumerate() {
            acc = acc.add(&power[j].mul(pj));
        }
        sums.push(acc);
    }
    // Newton: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
    let mut el = vec![UPoly::constant(Rational::one())];
    for k in 1..=n {
        let mut acc = UPoly::zero(());
        for i in 1..=k {
            let term = el[k - i].mul(&sums[i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        el.push(acc.scale(&Rational::new(1.into(), k.into())));
    }
    let e = m.target.twist_e;
    let phis = el
        .into_iter()
        .enumerate()
        .map(|(k, ek)| {
            let ek = if k % 2 == 1 { ek.neg() } else { ek };
            BinaryForm::new(k as u32 * e, ek)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HorizontalDivisor::new(e, phis)?)
}

/// Same divisor as `branch_image`, through the bivariate subresultant resultant.
pub fn branch_image_by_resultant(m: &FiberwiseMap) -> Result<HorizontalDivisor, BelyiError> {
    if m.degree() < 2 {
        return Err(BelyiError::NoCriticalLocus);
    }
    let vars = ["t", "l", "eta"];
    let f = embed(&m.chart_poly(), &vars, &[0, 2]);
    let w = Poly::var(&vars, "l")?;
    let deriv = f.derivative(2);
    let r = resultant(&f.sub(&w), &deriv, "eta")?;
    if r.is_zero() {
        return Err(BelyiError::NonSeparable);
    }
    let r = r.with_vars(&["t", "l"])?;
    let coeffs = r.coeffs_in(1);
    let lead = coeffs.last().expect("nonzero resultant");
    if !lead.is_constant() {
        return Err(BelyiError::NonSeparable);
    }
    let r = r.scale(&lead.constant_term().recip());
    Ok(HorizontalDivisor::from_fiber_poly(m.target.twist_e, &r)?)
}

/// Q[t][eta] modulo a monic polynomial in eta; elements are coefficient vectors of length n.
struct QuotientRing {
    modulus: Vec<UPoly<Rational>>,
}

impl QuotientRing {
    fn n(&self) -> usize {
        self.modulus.len() - 1
    }

    fn one(&self) -> Vec<UPoly<Rational>> {
        let mut v = vec![UPoly::zero(()); self.n()];
        v[0] = UPoly::constant(Rational::one());
        v
    }

    fn reduce(&self, mut a: Vec<UPoly<Rational>>) -> Vec<UPoly<Rational>> {
        let n = self.n();
        while a.len() > n {
            let top = a.pop().expect("nonempty");
            let shift = a.len() - n;
            for j in 0..n {
                a[shift + j] = a[shift + j].sub(&top.mul(&self.modulus[j]));
            }
        }
        a.resize(n, UPoly::zero(()));
        a
    }

    fn mul(&self, a: &[UPoly<Rational>], b: &[UPoly<Rational>]) -> Vec<UPoly<Rational>> {
        let mut prod = vec![UPoly::zero(()); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
        self.reduce(prod)
    }

    /// Power sums P_j = sum beta^j over the roots of the modulus, j < n.
    fn root_power_sums(&self) -> Vec<UPoly<Rational>> {
        let n = self.n();
        let a = |k: usize| &self.modulus[k];
        let mut p = vec![UPoly::constant(Rational::from_integer(n.into()))];
        for j in 1..n {
            // P_j + a_{n-1} P_{j-1} + ... + a_{n-j+1} P_1 + j a_{n-j} = 0
            let mut acc = a(n - j).scale(&Rational::from_integer(j.into()));
            for i in 1..j {
                acc = acc.add(&a(n - i).mul(&p[j - i]));
            }
            p.push(acc.neg());
        }
        p
    }
}

/// Re-expresses `p` (in a subset of variables) inside `vars`, sending variable i to `slots[i]`.
fn embed(p: &Poly, vars: &[&str], slots: &[usize]) -> Poly {
    Poly::from_terms(
        vars,
        p.terms().map(|(m, c)| {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[slots[i]] = k;
            }
            (e, c.clone())
        }),
    )
}

/// Image of a section: sum_i phi_i s^(d-i).
pub fn push_section(m: &FiberwiseMap, s: &Section) -> Section {
    match s {
        Section::Infinity => Section::Infinity,
        Section::Finite(f) => Section::Finite(m.zero_fiber_divisor().substitute_section(f)),
    }
}

/// Moves every point of the divisor by `s` along the fibers: l -> l + s.
pub fn translate_divisor(b: &HorizontalDivisor, s: &BinaryForm) -> HorizontalDivisor {
    let d = b.fiber_degree();
    // sum_i phi_i (l - s)^(d-i)
    let e = b.twist_e();
    let mut phis: Vec<BinaryForm> = (0..=d).map(|i| BinaryForm::zero(i as u32 * e)).collect();
    let neg_s = s.neg();
    for (i, phi) in b.phis().iter().enumerate() {
        let k = d - i;
        // (l - s)^k = sum_j C(k, j) l^(k-j) (-s)^j
        let mut binom = Rational::one();
        for j in 0..=k {
            let term = phi.mul(&neg_s.pow(j as u32)).scale(&binom);
            phis[i + j] = phis[i + j].add(&term);
            binom = binom * Rational::from_integer((k - j).into()) / Rational::from_integer((j + 1).into());
        }
    }
    HorizontalDivisor::new(e, phis).expect("translation keeps phi_0")
}

fn translate_section(s: &Section, by: &BinaryForm) -> Section {
    match s {
        Section::Infinity => Section::Infinity,
        Section::Finite(f) => Section::Finite(f.add(by)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BelyiConfig {
    pub degree_cap: u32,
    pub retry_cap: u32,
    /// Translation coefficients are drawn from [-coeff_bound, coeff_bound].
    pub coeff_bound: i64,
}

impl Default for BelyiConfig {
    fn default() -> Self {
        BelyiConfig { degree_cap: 512, retry_cap: 8, coeff_bound: 3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BelyiStep {
    pub map: FiberwiseMap,
    pub translation: BinaryForm,
    pub draws: u32,
    /// Tracked sections on the target after this step.
    pub sections: SectionList,
    /// Branch divisor of the step still to be simplified, already translated.
    pub residual: HorizontalDivisor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistinctnessWitness {
    pub left: String,
    pub right: String,
    pub difference: BinaryForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BelyiTrace {
    pub input: HorizontalDivisor,
    pub marked: SectionList,
    pub steps: Vec<BelyiStep>,
    pub final_surface: RuledSurface,
    /// Pairwise distinct finite sections followed by the infinity section.
    pub final_sections: SectionList,
    pub certificate: Vec<DistinctnessWitness>,
}

impl BelyiTrace {
    /// Finite final sections only.
    pub fn finite_sections(&self) -> Vec<(&str, &BinaryForm)> {
        self.final_sections.iter().filter_map(|s| s.section.form().map(|f| (s.label.as_str(), f))).collect()
    }
}

/// Merges equal sections, joining their labels with '='. Keeps first-occurrence order.
pub fn merge_equal(sections: SectionList) -> SectionList {
    let mut out: SectionList = Vec::new();
    for s in sections {
        match out.iter_mut().find(|o| o.section == s.section) {
            Some(o) => {
                o.label.push('=');
                o.label.push_str(&s.label);
            }
            None => out.push(s),
        }
    }
    out
}

/// Pairwise differences of finite sections; fails on the first coincidence.
pub fn distinctness_certificate(sections: &SectionList) -> Result<Vec<DistinctnessWitness>, BelyiError> {
    let finite: Vec<(&str, &BinaryForm)> =
        sections.iter().filter_map(|s| s.section.form().map(|f| (s.label.as_str(), f))).collect();
    let mut out = Vec::new();
    for i in 0..finite.len() {
        for j in i + 1..finite.len() {
            let difference = finite[i].1.sub(finite[j].1);
            if difference.is_zero() {
                return Err(BelyiError::NotDistinct(finite[i].0.into(), finite[j].0.into()));
            }
            out.push(DistinctnessWitness { left: finite[i].0.into(), right: finite[j].0.into(), difference });
        }
    }
    Ok(out)
}

fn random_form(rng: &mut impl Rng, degree: u32, bound: i64) -> BinaryForm {
    let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    BinaryForm::from_ints(degree, &coeffs).expect("degree respected")
}

/// Iterates p_B until the branch data is a union of distinct sections plus infinity.
pub fn belyi_reduce(
    b: &HorizontalDivisor,
    marked: &SectionList,
    config: &BelyiConfig,
    rng: &mut impl Rng,
) -> Result<BelyiTrace, BelyiError> {
    for s in marked {
        if let Section::Finite(f) = &s.section {
            if f.degree() != b.twist_e() {
                return Err(RuledError::DegreeMismatch { expected: b.twist_e(), found: f.degree() }.into());
            }
        }
    }
    let mut tracked: SectionList = marked.iter().filter(|s| !s.section.is_infinity()).cloned().collect();
    let mut residual = b.normalized();
    let mut steps = Vec::new();
    loop {
        if let Some(parts) = split_residual(&residual, steps.len())? {
            tracked.extend(parts);
            break;
        }
        let d = residual.fiber_degree() as u32;
        let twist = residual.twist_e() * d;
        if twist > config.degree_cap {
            return Err(BelyiError::DegreeGuard { twist, cap: config.degree_cap });
        }
        let k = steps.len();
        let map = build_pb(&residual);
        let image = branch_image(&map)?;
        let mut draws = 0;
        let step = loop {
            let s = if k == 0 { BinaryForm::zero(twist) } else { random_form(rng, twist, config.coeff_bound) };
            draws += 1;
            if let Some(step) = translated_step(&map, &image, &tracked, k, s, draws)? {
                break step;
            }
            if k == 0 || draws >= config.retry_cap {
                return Err(BelyiError::GenericityFailure(draws));
            }
        };
        tracked = step.sections.clone();
        residual = step.residual.clone();
        steps.push(step);
    }
    finish_trace(b, marked, steps, tracked)
}

/// Early exit: the residual divisor as labelled sections "R{k}.{j}" when it splits over Q.
pub fn split_residual(residual: &HorizontalDivisor, k: usize) -> Result<Option<SectionList>, BelyiError> {
    Ok(residual.split_into_sections()?.map(|parts| {
        parts
            .into_iter()
            .enumerate()
            .map(|(j, f)| LabeledSection::new(format!("R{k}.{j}"), Section::Finite(f)))
            .collect()
    }))
}

/// Step k with a fixed translation; `None` when the translated branch image is not reduced.
pub fn translated_step(
    map: &FiberwiseMap,
    image: &HorizontalDivisor,
    tracked: &SectionList,
    k: usize,
    translation: BinaryForm,
    draws: u32,
) -> Result<Option<BelyiStep>, BelyiError> {
    let moved = translate_divisor(image, &translation);
    if !moved.is_reduced()? {
        return Ok(None);
    }
    let mut sections: SectionList = tracked
        .iter()
        .map(|s| LabeledSection::new(s.label.clone(), translate_section(&push_section(map, &s.section), &translation)))
        .collect();
    sections.push(LabeledSection::new(format!("Z{}", k + 1), Section::Finite(translation.clone())));
    Ok(Some(BelyiStep { map: map.clone(), translation, draws, sections: merge_equal(sections), residual: moved }))
}

/// Recomputes step k from the residual and tracked sections before it.
pub fn replay_step(
    residual: &HorizontalDivisor,
    tracked: &SectionList,
    k: usize,
    translation: BinaryForm,
    draws: u32,
) -> Result<Option<BelyiStep>, BelyiError> {
    let map = build_pb(residual);
    let image = branch_image(&map)?;
    translated_step(&map, &image, tracked, k, translation, draws)
}

/// Merges, certifies distinctness and appends the infinity section.
pub fn finish_trace(
    b: &HorizontalDivisor,
    marked: &SectionList,
    steps: Vec<BelyiStep>,
    tracked: SectionList,
) -> Result<BelyiTrace, BelyiError> {
    let final_surface = match steps.last() {
        Some(s) => s.residual.surface(),
        None => b.normalized().surface(),
    };
    let mut final_sections = merge_equal(tracked);
    let certificate = distinctness_certificate(&final_sections)?;
    final_sections.push(LabeledSection::new("inf", Section::Infinity));
    Ok(BelyiTrace { input: b.clone(), marked: marked.clone(), steps, final_surface, final_sections, certificate })
}

/// Composite fiberwise polynomial of a trace, in (t, eta), including translations.
pub fn composite_map(trace: &BelyiTrace) -> Poly {
    let vars = ["t", "eta"];
    let mut acc = Poly::var(&vars, "eta").expect("eta present");
    for step in &trace.steps {
        let m = step.map.chart_poly();
        let composed = m.substitute_all(&[Poly::var(&vars, "t").unwrap(), acc.clone()]);
        let s = step.translation.chart().coeffs().iter().enumerate().fold(Poly::zero(&vars), |p, (j, c)| {
            p.add(&Poly::from_terms(&vars, [(vec![j as u32, 0], c.clone())]))
        });
        acc = composed.add(&s);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn form(e: u32, c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(e, c).unwrap()
    }

    fn div(e: u32, phis: &[&str]) -> HorizontalDivisor {
        HorizontalDivisor::parse(e, phis).unwrap()
    }

    #[test]
    fn pb_of_sections_and_square_root() {
        let zero = div(1, &["1", "0"]);
        assert_eq!(build_pb(&zero).chart_poly().to_string(), "eta");
        let m = build_pb(&div(1, &["1", "0", "-t0*t1"]));
        assert_eq!(m.chart_poly().to_string(), "eta^2 - t");
        assert_eq!(m.target.twist_e, 2);
        let lin = build_pb(&div(1, &["1", "-3*t0 + t1"]));
        assert_eq!(lin.chart_poly().to_string(), "t + eta - 3");
    }

    #[test]
    fn critical_divisors() {
        let m = build_pb(&div(1, &["1", "0", "-t0*t1"]));
        assert_eq!(critical_divisor(&m).unwrap().phis(), &[form(0, &[1]), form(1, &[])]);
        let m = build_pb(&div(1, &["1", "-t", "0"]));
        let c = critical_divisor(&m).unwrap();
        assert_eq!(c.phis()[1], form(1, &[0, 1]).scale(&Rational::new((-1).into(), 2.into())));
        let m = build_pb(&div(0, &["1", "0", "-1", "0"]));
        assert_eq!(critical_divisor(&m).unwrap().fiber_degree(), 2);
        assert_eq!(critical_divisor(&build_pb(&div(0, &["1", "0"]))), Err(BelyiError::NoCriticalLocus));
    }

    #[test]
    fn branch_images() {
        let m = build_pb(&div(1, &["1", "0", "-t"]));
        let b = branch_image(&m).unwrap();
        assert_eq!(b.phis(), &[form(0, &[1]), form(2, &[0, 1])]);
        let m = build_pb(&div(1, &["1", "-t", "0"]));
        let b = branch_image(&m).unwrap();
        assert_eq!(b.phis()[1], form(2, &[0, 0, 1]).scale(&Rational::new(1.into(), 4.into())));
        let m = build_pb(&div(0, &["1", "0", "-1"]));
        assert_eq!(branch_image(&m).unwrap().phis()[1], form(0, &[1]));
    }

    #[test]
    fn power_sums_agree_with_resultant() {
        for phis in [
            &["1", "0", "-t"][..],
            &["1", "-t", "0"],
            &["1", "t0 + t1", "t0*t1", "-3*t1^3"],
            &["1", "2*t0", "0", "t1^3 - t0^3", "5*t0^2*t1^2"],
        ] {
            let m = build_pb(&div(1, phis));
            assert_eq!(branch_image(&m).unwrap(), branch_image_by_resultant(&m).unwrap());
        }
    }

    #[test]
    fn pushing_sections() {
        let m = build_pb(&div(1, &["1", "0", "-t"]));
        assert_eq!(push_section(&m, &Section::Finite(form(1, &[]))), Section::Finite(form(2, &[0, -1])));
        assert_eq!(push_section(&m, &Section::Finite(form(1, &[0, 1]))), Section::Finite(form(2, &[0, -1, 1])));
        let id = build_pb(&div(1, &["1", "0"]));
        assert_eq!(push_section(&id, &Section::Finite(form(1, &[2, 5]))), Section::Finite(form(1, &[2, 5])));
    }

    #[test]
    fn reduce_square_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let marked = vec![LabeledSection::new("S0", Section::Finite(form(1, &[])))];
        let tr = belyi_reduce(&div(1, &["1", "0", "-t"]), &marked, &BelyiConfig::default(), &mut rng).unwrap();
        assert_eq!(tr.steps.len(), 1);
        let finite = tr.finite_sections();
        assert_eq!(finite.len(), 2);
        assert_eq!(finite[0], ("S0=R1.0", &form(2, &[0, -1])));
        assert_eq!(finite[1], ("Z1", &form(2, &[])));
        assert!(tr.final_sections.last().unwrap().section.is_infinity());
    }

    #[test]
    fn reduce_without_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let tr = belyi_reduce(&div(1, &["1", "t0 - t1"]), &vec![], &BelyiConfig::default(), &mut rng).unwrap();
        assert!(tr.steps.is_empty());
        let tr = belyi_reduce(&div(0, &["1", "0", "-1"]), &vec![], &BelyiConfig::default(), &mut rng).unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.finite_sections().len(), 2);
    }

    #[test]
    fn cusp_takes_two_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = div(1, &["1", "0", "-t0*t1", "0"]);
        let tr = belyi_reduce(&b, &vec![], &BelyiConfig::default(), &mut rng).unwrap();
        assert_eq!(tr.steps.len(), 2);
        assert_eq!(tr.final_surface.twist_e, 6);
        assert_eq!(tr.steps[0].residual.fiber_degree(), 2);
        assert_eq!(tr.steps[1].residual.fiber_degree(), 1);
    }

    #[test]
    fn degree_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = div(1, &["1", "0", "-t0*t1", "0"]);
        let cfg = BelyiConfig { degree_cap: 4, ..Default::default() };
        assert!(matches!(belyi_reduce(&b, &vec![], &cfg, &mut rng), Err(BelyiError::DegreeGuard { .. })));
    }

    #[test]
    fn infinity_multiplicity_is_degree() {
        let m = build_pb(&div(1, &["1", "0", "-t0*t1", "0"]));
        assert_eq!(m.infinity_preimage_multiplicity(), Some(3));
    }

    #[test]
    fn translation_moves_sections() {
        let b = div(1, &["1", "0"]);
        let moved = translate_divisor(&b, &form(1, &[1, 2]));
        assert_eq!(moved.phis()[1], form(1, &[-1, -2]));
        let sq = div(0, &["1", "0", "-1"]);
        let moved = translate_divisor(&sq, &form(0, &[1]));
        assert_eq!(moved.split_into_sections().unwrap().unwrap(), vec![form(0, &[]), form(0, &[2])]);
    }
}

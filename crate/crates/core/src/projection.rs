//! Projection of a hypersurface X in P^3 from a point of the hyperplane w = 0 to P^2,
//! choice of a verified point o in P^2, and the blow-up of P^2 at o as the ruled
//! surface P(O + O(1)) carrying the branch divisor.

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::{
    discriminant, factor_rational, squarefree_part_total, AlgebraError, Poly, Rational, UPoly,
};
use crate::ruled::{BinaryForm, HorizontalDivisor, LabeledSection, RuledError, RuledSurface, SectionList};

pub const SPACE_VARS: [&str; 4] = ["x0", "x1", "x2", "w"];
pub const PLANE_VARS: [&str; 3] = ["x0", "x1", "x2"];
pub const CENTERED_VARS: [&str; 4] = ["y0", "y1", "y2", "w"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectionError {
    #[error("input: {0}")]
    Input(String),
    #[error("center search failed after {0} draws")]
    CenterSearchFailed(u32),
    #[error("F not squarefree in w")]
    NotSquarefreeInW,
    #[error("no verified center found after {0} draws")]
    NoVerifiedCenter(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

/// X = {F = 0} in P^3 with coordinates (x0, x1, x2, w), H = {w = 0}, and D inside X and H.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceInput {
    f: Poly,
    d: Vec<Poly>,
}

impl HypersurfaceInput {
    pub fn new(f: Poly, d: Vec<Poly>) -> Result<Self, ProjectionError> {
        let f = f.with_vars(&SPACE_VARS).map_err(|_| input("F must use the variables x0, x1, x2, w"))?;
        if f.is_zero() {
            return Err(input("F is zero"));
        }
        if !f.is_homogeneous() {
            return Err(input("F not homogeneous"));
        }
        if f.total_degree() < 2 {
            return Err(input("F must have degree at least 2"));
        }
        if !f.depends_on(3) {
            return Err(input("F does not depend on w"));
        }
        if squarefree_part_total(&f)?.total_degree() != f.total_degree() {
            return Err(input("F not squarefree"));
        }
        let on_h = f.eval_var(3, &Rational::zero()).with_vars(&PLANE_VARS)?;
        let mut forms = Vec::with_capacity(d.len());
        for g in d {
            let g = g.with_vars(&PLANE_VARS).map_err(|_| input("D must use the variables x0, x1, x2"))?;
            if g.is_zero() || !g.is_homogeneous() {
                return Err(input("D forms must be nonzero and homogeneous"));
            }
            if !on_h.is_zero() && on_h.exact_div(&squarefree_part_total(&g)?).is_err() {
                return Err(input("D not contained in X and H"));
            }
            forms.push(g);
        }
        Ok(HypersurfaceInput { f, d: forms })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn d(&self) -> &[Poly] {
        &self.d
    }
}

fn input(msg: &str) -> ProjectionError {
    ProjectionError::Input(msg.to_string())
}

/// Invertible integer change of coordinates: old_i = sum_j m[i][j] new_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    pub matrix: Vec<Vec<i64>>,
}

impl LinearChange {
    /// Rewrites `f` (in the old variables) in the new variables `new_vars`.
    pub fn apply(&self, f: &Poly, new_vars: &[&str]) -> Poly {
        let images: Vec<Poly> = self
            .matrix
            .iter()
            .map(|row| {
                Poly::from_terms(
                    new_vars,
                    row.iter().enumerate().map(|(j, &c)| {
                        let mut e = vec![0; new_vars.len()];
                        e[j] = 1;
                        (e, Rational::from_integer(c.into()))
                    }),
                )
            })
            .collect();
        f.substitute_all(&images)
    }

    /// Exact inverse; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<LinearChange> {
        let n = self.matrix.len();
        let mut a: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<Rational> = row.iter().map(|&c| Rational::from_integer(c.into())).collect();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for row in a {
            let mut r = Vec::with_capacity(n);
            for x in &row[n..] {
                if !x.is_integer() {
                    return None;
                }
                r.push(i64::try_from(x.to_integer()).ok()?);
            }
            out.push(r);
        }
        Some(LinearChange { matrix: out })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionConfig {
    pub retry_cap: u32,
    /// Candidate coordinates are drawn from [-coord_bound, coord_bound].
    pub coord_bound: i64,
    pub sampled_lines: usize,
    pub irreducibility_trials: usize,
}

impl Default for ProjectionConfig {
    fn default() -> Self {
        ProjectionConfig { retry_cap: 32, coord_bound: 3, sampled_lines: 3, irreducibility_trials: 8 }
    }
}

/// The finite cover X -> P^2 after moving the center q to [0:0:0:1].
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedCover {
    /// q in the original coordinates.
    pub center_q: [i64; 4],
    pub change: LinearChange,
    /// F(q): G = F(new) / F(q).
    pub f_at_q: Rational,
    pub g: Poly,
    pub disc: Poly,
    pub delta: Poly,
    pub degree_k: u32,
    pub draws: u32,
}

pub fn choose_projection_center(
    inp: &HypersurfaceInput,
    cfg: &ProjectionConfig,
    rng: &mut impl Rng,
) -> Result<ProjectedCover, ProjectionError> {
    for draw in 1..=cfg.retry_cap {
        let a = rng.gen_range(-cfg.coord_bound..=cfg.coord_bound);
        let b = rng.gen_range(-cfg.coord_bound..=cfg.coord_bound);
        if let Some(pc) = projected_cover(inp, [a, b, 1, 0], draw)? {
            return Ok(pc);
        }
    }
    Err(ProjectionError::CenterSearchFailed(cfg.retry_cap))
}

/// Projection from q = [a:b:1:0]; `None` when q lies on X.
pub fn projected_cover(inp: &HypersurfaceInput, q: [i64; 4], draws: u32) -> Result<Option<ProjectedCover>, ProjectionError> {
    let qr: Vec<Rational> = q.iter().map(|&c| Rational::from_integer(c.into())).collect();
    let f_at_q = inp.f.eval(&qr);
    if f_at_q.is_zero() {
        return Ok(None);
    }
    let change = center_change(q);
    let g = change.apply(&inp.f, &SPACE_VARS).scale(&f_at_q.recip());
    let disc = discriminant(&g, "w")?;
    if disc.is_zero() {
        return Err(ProjectionError::NotSquarefreeInW);
    }
    let disc = disc.with_vars(&PLANE_VARS)?;
    let delta = squarefree_part_total(&disc)?;
    let degree_k = g.degree_in(3);
    Ok(Some(ProjectedCover { center_q: q, change, f_at_q, g, disc, delta, degree_k, draws }))
}

/// old x0 = x0' + a w', old x1 = x1' + b w', old x2 = w', old w = x2'.
pub fn center_change(q: [i64; 4]) -> LinearChange {
    let [a, b, _, _] = q;
    LinearChange { matrix: vec![vec![1, 0, 0, a], vec![0, 1, 0, b], vec![0, 0, 0, 1], vec![0, 0, 1, 0]] }
}

/// old x0 = y0 + a y2, old x1 = y1 + b y2, old x2 = y2, w fixed: moves o = [a:b:1] to [0:0:1].
pub fn base_change(o: [i64; 3]) -> LinearChange {
    let [a, b, _] = o;
    LinearChange { matrix: vec![vec![1, 0, a, 0], vec![0, 1, b, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]] }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineCheck {
    /// The line through o and [1:j:0].
    pub direction: [i64; 3],
    pub restricted_disc: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseChoice {
    pub o: [i64; 3],
    pub delta_at_o: Rational,
    /// G over o as a polynomial in w; its discriminant is nonzero.
    pub fiber_over_o: UPoly<Rational>,
    pub fiber_disc: Rational,
    pub line_checks: Vec<LineCheck>,
    /// (direction, parameter) of a specialization whose fiber is irreducible over Q.
    pub irreducible_witness: ([i64; 3], i64),
    pub warning: Option<String>,
    pub draws: u32,
}

pub const ABSOLUTE_IRREDUCIBILITY_WARNING: &str = "restricted cover irreducible over Q; absolute irreducibility not established";

pub fn choose_base_point(
    pc: &ProjectedCover,
    cfg: &ProjectionConfig,
    rng: &mut impl Rng,
) -> Result<BaseChoice, ProjectionError> {
    for draw in 1..=cfg.retry_cap {
        let a = rng.gen_range(-cfg.coord_bound..=cfg.coord_bound);
        let b = rng.gen_range(-cfg.coord_bound..=cfg.coord_bound);
        let r = rng.gen_range(-cfg.coord_bound..=cfg.coord_bound);
        let params: Vec<i64> = (0..cfg.irreducibility_trials).map(|_| rng.gen_range(-8..=8)).collect();
        if let Some(mut choice) = check_base_point(pc, [a, b, 1], cfg.sampled_lines, r, &params)? {
            choice.draws = draw;
            return Ok(choice);
        }
    }
    Err(ProjectionError::NoVerifiedCenter(cfg.retry_cap))
}

/// G restricted to the line through o and [1:j:0], in variables (u, v, w).
fn restrict_to_line(g: &Poly, o: [i64; 3], direction: [i64; 3]) -> Poly {
    let vars = ["u", "v", "w"];
    let mut m = vec![vec![0i64; 3]; 4];
    for i in 0..3 {
        m[i][0] = o[i];
        m[i][1] = direction[i];
    }
    m[3][2] = 1;
    LinearChange { matrix: m }.apply(g, &vars)
}

/// Runs checks (a), (b), (c) for a candidate o; `None` if any fails.
pub fn check_base_point(
    pc: &ProjectedCover,
    o: [i64; 3],
    sampled_lines: usize,
    line_slope: i64,
    params: &[i64],
) -> Result<Option<BaseChoice>, ProjectionError> {
    let or: Vec<Rational> = o.iter().map(|&c| Rational::from_integer(c.into())).collect();
    let delta_at_o = pc.delta.eval(&or);
    if delta_at_o.is_zero() {
        return Ok(None);
    }
    let fiber_over_o = fiber_poly(&pc.g, &or);
    let fiber_disc = {
        let f = Poly::from_upoly(&Poly::zero(&["w"]), 0, &fiber_over_o);
        discriminant(&f, "w")?.constant_term()
    };
    if fiber_disc.is_zero() {
        return Ok(None);
    }
    let mut line_checks = Vec::with_capacity(sampled_lines);
    for j in 0..sampled_lines as i64 {
        let direction = [1, j, 0];
        let gl = restrict_to_line(&pc.g, o, direction);
        let restricted_disc = discriminant(&gl, "w")?;
        if restricted_disc.is_zero() {
            return Ok(None);
        }
        line_checks.push(LineCheck { direction, restricted_disc: restricted_disc.with_vars(&["u", "v"])? });
    }
    let direction = [1, line_slope, 0];
    let gl = restrict_to_line(&pc.g, o, direction);
    let mut witness = None;
    for &c in params {
        let pt = [Rational::one(), Rational::from_integer(c.into())];
        let fw = fiber_poly(&gl, &pt);
        let fac = factor_rational(&fw);
        if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
            witness = Some((direction, c));
            break;
        }
    }
    let Some(irreducible_witness) = witness else {
        return Ok(None);
    };
    Ok(Some(BaseChoice {
        o,
        delta_at_o,
        fiber_over_o,
        fiber_disc,
        line_checks,
        irreducible_witness,
        warning: Some(ABSOLUTE_IRREDUCIBILITY_WARNING.to_string()),
        draws: 1,
    }))
}

/// Polynomial in the last variable after fixing all the others.
fn fiber_poly(g: &Poly, point: &[Rational]) -> UPoly<Rational> {
    let n = g.nvars();
    let mut h = g.clone();
    for (i, c) in point.iter().enumerate() {
        h = h.eval_var(i, c);
    }
    h.to_upoly(n - 1).expect("only the last variable remains")
}

/// The ruled surface P(O + O(1)) obtained by blowing up o, with the branch divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct BlownUpBase {
    pub surface: RuledSurface,
    pub change: LinearChange,
    /// G in the coordinates (y0, y1, y2, w) centered at o.
    pub g: Poly,
    /// Discriminant of G in (y0, y1, y2), with multiplicities.
    pub disc: Poly,
    pub b1: HorizontalDivisor,
    pub marked: SectionList,
}

impl BlownUpBase {
    /// The discriminant in the chart (t, l) for t finite or (s, l') at t = inf,
    /// where the point [t0 y : t1 y : x] has l = x / y.
    pub fn disc_chart(&self, at_infinity: bool) -> Poly {
        plane_chart(&self.disc, at_infinity)
    }

    /// G in the same chart, variables (t, l, w).
    pub fn cover_chart(&self, at_infinity: bool) -> Poly {
        let vars = ["t", "l", "w"];
        let t = Poly::var(&vars, "t").unwrap();
        let l = Poly::var(&vars, "l").unwrap();
        let w = Poly::var(&vars, "w").unwrap();
        let one = t.constant_like(Rational::one());
        let images = if at_infinity { [t, one, l, w] } else { [one, t, l, w] };
        self.g.substitute_all(&images)
    }
}

/// A form in (y0, y1, y2) written in the ruled-surface chart, variables (t, l).
pub fn plane_chart(p: &Poly, at_infinity: bool) -> Poly {
    let vars = ["t", "l"];
    let t = Poly::var(&vars, "t").unwrap();
    let l = Poly::var(&vars, "l").unwrap();
    let one = t.constant_like(Rational::one());
    let images = if at_infinity { [t, one, l] } else { [one, t, l] };
    p.substitute_all(&images)
}

/// P(t0 y, t1 y, x) = sum_i phi_i(t0, t1) x^(n-i) y^i for a form P in (y0, y1, y2) with P(o) != 0.
pub fn plane_form_divisor(p: &Poly) -> Result<HorizontalDivisor, ProjectionError> {
    let n = p.total_degree() as usize;
    let mut charts = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (m, c) in p.terms() {
        let i = (m.0[0] + m.0[1]) as usize;
        charts[i][m.0[1] as usize] += c;
    }
    let phis = charts
        .into_iter()
        .enumerate()
        .map(|(i, c)| BinaryForm::new(i as u32, UPoly::new((), c)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HorizontalDivisor::new(1, phis)?)
}

pub fn blow_up_base(pc: &ProjectedCover, base: &BaseChoice) -> Result<BlownUpBase, ProjectionError> {
    let change = base_change(base.o);
    let g = change.apply(&pc.g, &CENTERED_VARS);
    let plane = LinearChange { matrix: change.matrix[..3].iter().map(|r| r[..3].to_vec()).collect() };
    let delta = plane.apply(&pc.delta, &CENTERED_VARS[..3]);
    let disc = plane.apply(&pc.disc, &CENTERED_VARS[..3]);
    let b1 = plane_form_divisor(&delta)?;
    let surface = RuledSurface::new(1);
    let marked = vec![LabeledSection::new("S0", surface.zero_section())];
    Ok(BlownUpBase { surface, change, g, disc, b1, marked })
}

//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use surfres::algebra::parse::parse_poly;
use surfres::algebra::rational::{fmt_rational, parse_rational, rat};
use surfres::algebra::{BasePoint, Nf, NumberField, Poly, Rational, Scalar, UPoly};
use surfres::ruled::{BinaryForm, HorizontalDivisor, LabeledSection, Section, SectionList};
use surfres::stabilization::{FiberTree, Position};

pub fn crate_root() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn input_path(name: &str) -> std::path::PathBuf {
    crate_root().join("inputs").join(name)
}

// ---------------------------------------------------------------- random divisors

/// Integer chart coefficients of one random horizontal divisor.
#[derive(Clone, Debug)]
pub struct DivisorData {
    pub twist_e: u32,
    pub coeffs: Vec<Vec<i64>>,
}

impl DivisorData {
    pub fn fiber_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn divisor(&self) -> HorizontalDivisor {
        let phis = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| BinaryForm::from_ints(i as u32 * self.twist_e, c).unwrap())
            .collect();
        HorizontalDivisor::new(self.twist_e, phis).unwrap()
    }
}

/// A reduced divisor with fiber degree in `degrees` and twist in 1..=3; phi_0 is a
/// nonzero integer so normalization is exercised.
pub fn random_divisor(rng: &mut impl Rng, degrees: std::ops::RangeInclusive<usize>) -> DivisorData {
    loop {
        let n = rng.gen_range(degrees.clone());
        let e = rng.gen_range(1..=3u32);
        let mut coeffs = vec![vec![*[1i64, -1, 2, 3].get(rng.gen_range(0..4)).unwrap()]];
        for i in 1..=n {
            coeffs.push((0..=i as u32 * e).map(|_| rng.gen_range(-3..=3)).collect());
        }
        let data = DivisorData { twist_e: e, coeffs };
        if data.divisor().is_reduced().unwrap() {
            return data;
        }
    }
}

/// Text of sum_i phi_i(t) eta^(d-i) / phi_0 built from the integer data, read back by the parser.
pub fn expansion_by_text(data: &DivisorData) -> Poly {
    let d = data.fiber_degree();
    let lead = data.coeffs[0][0];
    let mut text = String::from("0");
    for (i, c) in data.coeffs.iter().enumerate() {
        for (j, a) in c.iter().enumerate() {
            if *a != 0 {
                text.push_str(&format!(" + ({a}/{lead})*t^{j}*eta^{}", d - i));
            }
        }
    }
    parse_poly(&text, &["t", "eta"]).unwrap()
}

// ---------------------------------------------------------------- jet families

pub const FIELDS: [&[i64]; 5] = [&[-2, 0, 1], &[1, 0, 1], &[-1, -1, 1], &[-2, 0, 0, 1], &[1, 1, 1]];

/// Sections sum_k a_ik g^k over a point g = 0, with prescribed first differences.
#[derive(Clone, Debug)]
pub struct JetFamily {
    pub point: BasePoint,
    pub g: UPoly<Rational>,
    pub coeffs: Vec<Vec<i64>>,
    pub max_contact: usize,
}

impl JetFamily {
    pub fn twist(&self) -> u32 {
        (self.max_contact * self.g.deg0()) as u32
    }

    pub fn sections(&self) -> SectionList {
        let e = self.twist();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut chart = UPoly::zero(());
                for (k, c) in a.iter().enumerate() {
                    chart = chart.add(&self.g.pow(k as u32).scale(&rat(*c)));
                }
                LabeledSection::new(format!("S{i}"), Section::Finite(BinaryForm::new(e, chart).unwrap()))
            })
            .collect()
    }
}

/// Random family with 2..=6 sections and contact orders at most `max_contact`.
pub fn random_jet_family(rng: &mut impl Rng, algebraic: bool, max_contact: usize) -> JetFamily {
    let (point, g) = if algebraic {
        let g = UPoly::from_ints(FIELDS[rng.gen_range(0..FIELDS.len())]);
        (BasePoint::Algebraic(NumberField::new(&g).unwrap()), g)
    } else {
        let c = rng.gen_range(-3..=3i64);
        (BasePoint::Rational(rat(c)), UPoly::from_ints(&[-c, 1]))
    };
    let n = rng.gen_range(2..=6usize);
    let mut coeffs = vec![Vec::new(); n];
    let mut groups = vec![(0..n).collect::<Vec<_>>()];
    for k in 0..=max_contact {
        let mut next = Vec::new();
        for group in groups {
            // split the group; at the last order every member is separated
            let parts = if k == max_contact { group.len() } else { rng.gen_range(1..=group.len()) };
            let values = distinct_values(rng, parts);
            let mut subgroups = vec![Vec::new(); parts];
            for (j, &i) in group.iter().enumerate() {
                let slot = if j < parts { j } else { rng.gen_range(0..parts) };
                subgroups[slot].push(i);
            }
            for (s, sub) in subgroups.into_iter().enumerate() {
                for &i in &sub {
                    coeffs[i].push(values[s]);
                }
                if sub.len() > 1 {
                    next.push(sub);
                }
            }
        }
        groups = next;
    }
    JetFamily { point, g, coeffs, max_contact }
}

fn distinct_values(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    let mut out = Vec::new();
    while out.len() < n {
        let v = rng.gen_range(-4..=4);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

// ---------------------------------------------------------------- blow-up chart oracle

type Member = (String, UPoly<Nf>);

struct ChartVertex {
    parent: Option<usize>,
    attach: Option<String>,
    multiplicity: u32,
    level: u32,
    marked: Vec<(String, String)>,
}

/// Dual tree over the point by literal blow-ups in charts: a group of sections through
/// (u, lambda) = (0, c) is replaced by (g - c) / u on the exceptional curve. Exceptional
/// curves with a single special point besides their node are contracted afterwards.
pub fn blowup_oracle(point: &BasePoint, sections: &SectionList) -> String {
    let k = point.field();
    let members: Vec<Member> = sections
        .iter()
        .filter_map(|s| s.section.form().map(|f| (s.label.clone(), f)))
        .map(|(l, f)| {
            let local = f.chart().map(k.clone(), |c| Nf::rational(&k, c.clone())).taylor_shift(&point.coordinate());
            (l, local)
        })
        .collect();
    let mut vs = vec![ChartVertex { parent: None, attach: None, multiplicity: 0, level: 0, marked: vec![] }];
    blow_up(&mut vs, 0, members, &k);
    contract(&mut vs);
    render_chart_tree(&vs)
}

fn blow_up(vs: &mut Vec<ChartVertex>, at: usize, members: Vec<Member>, k: &std::sync::Arc<NumberField>) {
    let mut groups: Vec<(Nf, Vec<Member>)> = Vec::new();
    for (l, g) in members {
        let c = g.coeff(0);
        match groups.iter_mut().find(|(p, _)| *p == c) {
            Some((_, grp)) => grp.push((l, g)),
            None => groups.push((c, vec![(l, g)])),
        }
    }
    for (c, group) in groups {
        if group.len() == 1 {
            vs[at].marked.push((group[0].0.clone(), c.render()));
            continue;
        }
        let level = vs[at].level + 1;
        vs.push(ChartVertex { parent: Some(at), attach: Some(c.render()), multiplicity: 1, level, marked: vec![] });
        let child = vs.len() - 1;
        let u = UPoly::x(k.clone());
        let moved = group
            .into_iter()
            .map(|(l, g)| {
                let shifted = g.sub(&UPoly::constant(c.clone()));
                (l, shifted.exact_div(&u).expect("every member passes through the center"))
            })
            .collect();
        blow_up(vs, child, moved, k);
    }
}

fn contract(vs: &mut [ChartVertex]) {
    loop {
        let found = (1..vs.len()).find(|&v| {
            vs[v].parent.is_some()
                && vs[v].marked.is_empty()
                && vs.iter().filter(|w| w.parent == Some(v)).count() == 1
        });
        let Some(v) = found else { return };
        let child = vs.iter().position(|w| w.parent == Some(v)).unwrap();
        vs[child].parent = vs[v].parent;
        vs[child].attach = vs[v].attach.clone();
        vs[child].multiplicity += vs[v].multiplicity;
        // detach v; it is skipped when rendering
        vs[v].parent = Some(usize::MAX);
    }
}

fn render_chart_tree(vs: &[ChartVertex]) -> String {
    fn walk(vs: &[ChartVertex], v: usize) -> String {
        let mut marked: Vec<String> = vs[v].marked.iter().map(|(l, p)| format!("{l}@{p}")).collect();
        marked.sort();
        let mut kids: Vec<(String, String)> = (0..vs.len())
            .filter(|&c| vs[c].parent == Some(v))
            .map(|c| (vs[c].attach.clone().unwrap_or_default(), walk(vs, c)))
            .collect();
        kids.sort();
        let kids: Vec<String> = kids.into_iter().map(|(a, s)| format!("{a}->{s}")).collect();
        format!("(m{} l{} [{}] {{{}}})", vs[v].multiplicity, vs[v].level, marked.join(","), kids.join(";"))
    }
    walk(vs, 0)
}

/// The same rendering of a library tree; infinity markers are left out.
pub fn render_fiber_tree(t: &FiberTree) -> String {
    let vs: Vec<ChartVertex> = t
        .vertices
        .iter()
        .map(|v| ChartVertex {
            parent: v.parent,
            attach: v.attach.as_ref().map(Position::render),
            multiplicity: v.multiplicity,
            level: v.level,
            marked: v
                .marked
                .iter()
                .filter(|(_, p)| *p != Position::Infinity)
                .map(|(l, p)| (l.clone(), p.render()))
                .collect(),
        })
        .collect();
    let root = vs.iter().position(|v| v.parent.is_none()).unwrap();
    assert_eq!(root, 0, "root first");
    render_chart_tree(&vs)
}

/// Tree invariants: one root, #V = #E + 1, every vertex reaches the root, special points
/// pairwise distinct on each component, every finite section marked exactly once.
pub fn tree_invariants(t: &FiberTree, labels: &[String]) -> Result<(), String> {
    let n = t.vertices.len();
    if t.vertices.iter().filter(|v| v.parent.is_none()).count() != 1 {
        return Err("root count".into());
    }
    if t.edge_count() + 1 != n {
        return Err("#V != #E + 1".into());
    }
    for i in 0..n {
        let (mut cur, mut steps) = (i, 0);
        while let Some(p) = t.vertices[cur].parent {
            cur = p;
            steps += 1;
            if steps > n {
                return Err("cycle".into());
            }
        }
        if t.vertices[i].distance != steps as u32 {
            return Err(format!("distance of {i}"));
        }
    }
    let mut count: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in t.vertices.iter().enumerate() {
        let mut special: Vec<String> = v.marked.iter().map(|(_, p)| p.render()).collect();
        special.extend(t.children(i).iter().map(|&c| t.vertices[c].attach.as_ref().unwrap().render()));
        let before = special.len();
        special.sort();
        special.dedup();
        if special.len() != before {
            return Err(format!("special points collide on vertex {i}"));
        }
        for (l, _) in &v.marked {
            *count.entry(l.as_str()).or_default() += 1;
        }
    }
    for l in labels {
        if count.get(l.as_str()) != Some(&1) {
            return Err(format!("section {l} marked {:?} times", count.get(l.as_str())));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- lattice hull oracle

/// Lattice points on the compact boundary of conv((cone <(1,0), (-q,m)> ∩ Z^2) \ {0}),
/// from (1,0) to (-q,m), by gift wrapping over the bounding box.
pub fn lattice_hull_boundary(m: i64, q: i64) -> Vec<[i64; 2]> {
    let inside = |x: i64, y: i64| (x, y) != (0, 0) && y >= 0 && m * x + q * y >= 0;
    let mut points = Vec::new();
    for x in -q..=1 {
        for y in 0..=m {
            if inside(x, y) {
                points.push([x, y]);
            }
        }
    }
    let cross = |o: [i64; 2], a: [i64; 2], b: [i64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let dist = |o: [i64; 2], a: [i64; 2]| (a[0] - o[0]).pow(2) + (a[1] - o[1]).pow(2);
    let mut out = vec![[1, 0]];
    let mut v = [1, 0];
    while v != [-q, m] {
        let mut best: Option<[i64; 2]> = None;
        for &p in points.iter().filter(|p| p[1] > v[1]) {
            best = match best {
                None => Some(p),
                Some(b) => {
                    let c = cross(v, b, p);
                    if c > 0 || (c == 0 && dist(v, p) < dist(v, b)) {
                        Some(p)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        v = best.expect("boundary reaches the far ray");
        out.push(v);
    }
    out
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------- log fault injection

/// Every leaf of a JSON value, as a path of keys and indices.
pub fn leaf_paths(v: &serde_json::Value) -> Vec<Vec<serde_json::Value>> {
    fn walk(v: &serde_json::Value, path: &mut Vec<serde_json::Value>, out: &mut Vec<Vec<serde_json::Value>>) {
        match v {
            serde_json::Value::Object(m) => {
                for (k, x) in m {
                    path.push(serde_json::Value::String(k.clone()));
                    walk(x, path, out);
                    path.pop();
                }
            }
            serde_json::Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    path.push(serde_json::Value::from(i));
                    walk(x, path, out);
                    path.pop();
                }
            }
            _ => out.push(path.clone()),
        }
    }
    let mut out = Vec::new();
    walk(v, &mut Vec::new(), &mut out);
    out
}

pub fn leaf_mut<'a>(v: &'a mut serde_json::Value, path: &[serde_json::Value]) -> &'a mut serde_json::Value {
    path.iter().fold(v, |cur, step| match step {
        serde_json::Value::String(k) => cur.get_mut(k.as_str()).unwrap(),
        i => cur.get_mut(i.as_u64().unwrap() as usize).unwrap(),
    })
}

/// A different value of the same shape.
pub fn perturb(v: &serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Value::from(i + 1),
            None => Value::from(n.as_f64().unwrap_or(0.0) + 1.0),
        },
        Value::String(s) => match parse_rational(s) {
            Some(r) => Value::String(fmt_rational(&(r + rat(1)))),
            None => Value::String(format!("{s}x")),
        },
        Value::Null => Value::from(1),
        Value::Array(_) => Value::Array(vec![Value::from(1)]),
        Value::Object(_) => Value::Null,
    }
}

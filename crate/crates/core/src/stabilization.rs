//! Discriminant locus of the marked sections, dual trees of the stabilized special
//! fibers, smoothing of the total space by node chains, and the SNC certificate.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, BasePoint, LocalJet, Nf, Scalar, UPoly, Valuation};
use crate::ruled::{BinaryForm, RuledError, RuledSurface, Section, SectionList};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilizationError {
    #[error("sections not distinct: {0} = {1}")]
    NotDistinct(String, String),
    #[error("positions collide at maximal depth: {0} and {1}")]
    PositionsCollide(String, String),
    #[error("extension degree {degree} exceeds cap {cap}")]
    ExtensionCap { degree: usize, cap: usize },
    #[error("collision tree needs at least two sections")]
    TooFewSections,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Collision {
    pub left: String,
    pub right: String,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusPoint {
    pub point: BasePoint,
    pub collisions: Vec<Collision>,
}

impl LocusPoint {
    pub fn max_order(&self) -> u32 {
        self.collisions.iter().map(|c| c.order).max().unwrap_or(0)
    }
}

/// Points of P^1 over which two marked sections meet.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantLocus {
    pub points: Vec<LocusPoint>,
    /// Reduced form vanishing exactly on the locus.
    pub defining_form: BinaryForm,
}

/// Intersections of the finite sections; the infinity section meets none of them.
pub fn discriminant_locus(sections: &SectionList, extension_cap: usize) -> Result<DiscriminantLocus, StabilizationError> {
    let finite: Vec<(&str, &BinaryForm)> =
        sections.iter().filter_map(|s| s.section.form().map(|f| (s.label.as_str(), f))).collect();
    let mut found: Vec<(BasePoint, Vec<Collision>)> = Vec::new();
    let mut factors: Vec<UPoly<crate::algebra::Rational>> = Vec::new();
    let mut at_infinity = false;
    for i in 0..finite.len() {
        for j in i + 1..finite.len() {
            let diff = finite[i].1.sub(finite[j].1);
            if diff.is_zero() {
                return Err(StabilizationError::NotDistinct(finite[i].0.into(), finite[j].0.into()));
            }
            for (p, m) in diff.zeros()? {
                if let BasePoint::Algebraic(k) = &p {
                    if k.degree() > extension_cap {
                        return Err(StabilizationError::ExtensionCap { degree: k.degree(), cap: extension_cap });
                    }
                    if !factors.iter().any(|f| f == k.minimal_polynomial()) {
                        factors.push(k.minimal_polynomial().clone());
                    }
                }
                match &p {
                    BasePoint::Rational(r) => {
                        let lin = UPoly::new((), vec![-r.clone(), num_traits::One::one()]);
                        if !factors.contains(&lin) {
                            factors.push(lin);
                        }
                    }
                    BasePoint::Infinity => at_infinity = true,
                    _ => {}
                }
                let c = Collision { left: finite[i].0.into(), right: finite[j].0.into(), order: m };
                match found.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(c),
                    None => found.push((p, vec![c])),
                }
            }
        }
    }
    found.sort_by_key(|(p, _)| p.order_key());
    let mut chart = UPoly::one(());
    let mut degree = 0;
    for f in &factors {
        chart = chart.mul(f);
        degree += f.deg0() as u32;
    }
    if at_infinity {
        degree += 1;
    }
    let defining_form = BinaryForm::new(degree, chart)?;
    let points = found.into_iter().map(|(point, collisions)| LocusPoint { point, collisions }).collect();
    Ok(DiscriminantLocus { points, defining_form })
}

/// Point of a fiber component in its coordinate; `Infinity` is where the infinity section passes.
#[derive(Clone, Debug, PartialEq)]
pub enum Position {
    Finite(Nf),
    Infinity,
}

impl Position {
    pub fn render(&self) -> String {
        match self {
            Position::Finite(c) => c.render(),
            Position::Infinity => "inf".into(),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Proper transform of the original fiber.
    Root,
    /// Component produced by stabilization.
    Component,
    /// Component inserted to smooth a node of multiplicity at least 2.
    Chain,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Root => "root",
            VertexKind::Component => "component",
            VertexKind::Chain => "chain",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub parent: Option<usize>,
    /// Where this component meets its parent, in the parent's coordinate.
    pub attach: Option<Position>,
    /// m in the local equation uv = t^m of the node with the parent.
    pub multiplicity: u32,
    /// Blow-up depth (order of contact with the proper transform).
    pub level: u32,
    /// Graph distance from the root.
    pub distance: u32,
    pub marked: Vec<(String, Position)>,
}

/// Dual tree of a special fiber with marked points.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberTree {
    pub point: BasePoint,
    pub vertices: Vec<Vertex>,
}

impl FiberTree {
    pub fn single(point: BasePoint, marked: Vec<(String, Position)>) -> Self {
        FiberTree {
            point,
            vertices: vec![Vertex {
                kind: VertexKind::Root,
                parent: None,
                attach: None,
                multiplicity: 0,
                level: 0,
                distance: 0,
                marked,
            }],
        }
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&c| self.vertices[c].parent == Some(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.parent.is_some()).count()
    }

    /// Section label -> vertex carrying it.
    pub fn section_vertex(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.marked.iter().any(|(l, _)| l == label))
    }

    /// Same tree with vertices in depth-first order, children sorted by attach position.
    pub fn canonical(&self) -> FiberTree {
        let mut order = Vec::with_capacity(self.vertices.len());
        let root = self.vertices.iter().position(|v| v.parent.is_none()).expect("tree has a root");
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            let mut kids = self.children(v);
            kids.sort_by_key(|&c| std::cmp::Reverse(self.vertices[c].attach.as_ref().map(Position::render)));
            stack.extend(kids);
        }
        let mut index = vec![0; self.vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let vertices = order
            .iter()
            .map(|&old| {
                let mut v = self.vertices[old].clone();
                v.parent = v.parent.map(|p| index[p]);
                v.marked.sort_by(|a, b| a.0.cmp(&b.0));
                v
            })
            .collect();
        FiberTree { point: self.point.clone(), vertices }
    }

    fn recompute_distances(&mut self) {
        for i in 0..self.vertices.len() {
            let mut d = 0;
            let mut cur = i;
            while let Some(p) = self.vertices[cur].parent {
                d += 1;
                cur = p;
            }
            self.vertices[i].distance = d;
        }
    }
}

/// Stable tree of the sections at one point, from their jets.
///
/// Components are the root and every set of at least two sections that agree to some
/// order d >= 1 and split at order d; marked positions are the order-d coefficients.
pub fn collision_tree(point: &BasePoint, jets: &[(String, LocalJet)]) -> Result<FiberTree, StabilizationError> {
    if jets.len() < 2 {
        return Err(StabilizationError::TooFewSections);
    }
    let n = jets.len();
    let mut v = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            match jets[i].1.sub(&jets[j].1).valuation()? {
                Valuation::Finite(k) => {
                    v[i][j] = k;
                    v[j][i] = k;
                }
                Valuation::Infinite => {
                    return Err(StabilizationError::PositionsCollide(jets[i].0.clone(), jets[j].0.clone()))
                }
            }
        }
    }
    let mut tree = FiberTree::single(point.clone(), Vec::new());
    let all: Vec<usize> = (0..n).collect();
    grow(&mut tree, 0, &all, 0, jets, &v);
    tree.recompute_distances();
    Ok(tree.canonical())
}

fn grow(tree: &mut FiberTree, vertex: usize, members: &[usize], level: u32, jets: &[(String, LocalJet)], v: &[Vec<u32>]) {
    let mut groups: Vec<(Nf, Vec<usize>)> = Vec::new();
    for &i in members {
        let c = jets[i].1.coeff(level as usize);
        match groups.iter_mut().find(|(p, _)| *p == c) {
            Some((_, g)) => g.push(i),
            None => groups.push((c, vec![i])),
        }
    }
    for (pos, group) in groups {
        if group.len() == 1 {
            tree.vertices[vertex].marked.push((jets[group[0]].0.clone(), Position::Finite(pos)));
            continue;
        }
        let split = group
            .iter()
            .flat_map(|&i| group.iter().filter(move |&&j| j != i).map(move |&j| v[i][j]))
            .min()
            .expect("group has two members");
        tree.vertices.push(Vertex {
            kind: VertexKind::Component,
            parent: Some(vertex),
            attach: Some(Position::Finite(pos)),
            multiplicity: split - level,
            level: split,
            distance: 0,
            marked: Vec::new(),
        });
        let child = tree.vertices.len() - 1;
        grow(tree, child, &group, split, jets, v);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationConfig {
    pub extension_cap: usize,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig { extension_cap: 16 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowUpRecord {
    pub point: String,
    pub vertex: usize,
    pub level: u32,
    pub kind: VertexKind,
}

/// The family over P^1 with the stabilized special fibers.
#[derive(Clone, Debug, PartialEq)]
pub struct StableFamily {
    pub surface: RuledSurface,
    pub sections: SectionList,
    pub locus: DiscriminantLocus,
    pub special_fibers: Vec<FiberTree>,
    pub blowup_schedule: Vec<BlowUpRecord>,
}

impl StableFamily {
    /// The ruled surface itself with no modification over the locus; special fibers are
    /// single components carrying every section at its value.
    pub fn unmodified(surface: RuledSurface, sections: SectionList, locus: DiscriminantLocus) -> Self {
        let special_fibers = locus.points.iter().map(|lp| plain_fiber(&lp.point, &sections)).collect();
        StableFamily { surface, sections, locus, special_fibers, blowup_schedule: Vec::new() }
    }

    /// The fiber over any base point: the special tree over the locus, one component elsewhere.
    pub fn fiber_at(&self, p: &BasePoint) -> FiberTree {
        match self.special_fibers.iter().find(|t| t.point == *p) {
            Some(t) => t.clone(),
            None => plain_fiber(p, &self.sections),
        }
    }
}

fn plain_fiber(p: &BasePoint, sections: &SectionList) -> FiberTree {
    let marked = sections
        .iter()
        .map(|s| {
            let pos = match &s.section {
                Section::Finite(f) => Position::Finite(f.value_at(p)),
                Section::Infinity => Position::Infinity,
            };
            (s.label.clone(), pos)
        })
        .collect();
    FiberTree::single(p.clone(), marked)
}

/// Stabilizes the marked sections over every point of the discriminant locus.
pub fn stabilize(
    surface: RuledSurface,
    sections: &SectionList,
    cfg: &StabilizationConfig,
) -> Result<StableFamily, StabilizationError> {
    let locus = discriminant_locus(sections, cfg.extension_cap)?;
    let mut special_fibers = Vec::with_capacity(locus.points.len());
    let mut blowup_schedule = Vec::new();
    for lp in &locus.points {
        let order = lp.max_order() as usize + 1;
        let jets: Vec<(String, LocalJet)> = sections
            .iter()
            .filter_map(|s| s.section.form().map(|f| (s.label.clone(), f.jet_at(&lp.point, order))))
            .collect();
        let mut tree = collision_tree(&lp.point, &jets)?;
        if sections.iter().any(|s| s.section.is_infinity()) {
            let label = sections.iter().find(|s| s.section.is_infinity()).map(|s| s.label.clone()).unwrap();
            tree.vertices[0].marked.push((label, Position::Infinity));
        }
        for (i, v) in tree.vertices.iter().enumerate().skip(1) {
            blowup_schedule.push(BlowUpRecord { point: lp.point.key(), vertex: i, level: v.level, kind: v.kind });
        }
        special_fibers.push(tree);
    }
    Ok(StableFamily { surface, sections: sections.clone(), locus, special_fibers, blowup_schedule })
}

/// Replaces every node uv = t^m with m >= 2 by a chain of m - 1 components.
pub fn smooth_total_space(fam: &StableFamily) -> StableFamily {
    let mut out = fam.clone();
    for tree in out.special_fibers.iter_mut() {
        let n = tree.vertices.len();
        for child in 0..n {
            let m = tree.vertices[child].multiplicity;
            if tree.vertices[child].parent.is_none() || m < 2 {
                continue;
            }
            let mut parent = tree.vertices[child].parent.unwrap();
            let mut attach = tree.vertices[child].attach.clone();
            let base_level = tree.vertices[child].level - m;
            let field = tree.point.field();
            for k in 1..m {
                tree.vertices.push(Vertex {
                    kind: VertexKind::Chain,
                    parent: Some(parent),
                    attach,
                    multiplicity: 1,
                    level: base_level + k,
                    distance: 0,
                    marked: Vec::new(),
                });
                parent = tree.vertices.len() - 1;
                attach = Some(Position::Finite(Nf::zero_in(&field)));
                out.blowup_schedule.push(BlowUpRecord {
                    point: tree.point.key(),
                    vertex: parent,
                    level: base_level + k,
                    kind: VertexKind::Chain,
                });
            }
            let v = &mut tree.vertices[child];
            v.parent = Some(parent);
            v.attach = attach;
            v.multiplicity = 1;
        }
        tree.recompute_distances();
        *tree = tree.canonical();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SncFailure {
    #[error("{point}: {names:?} meet on {vertex_kind} {vertex} at {position}")]
    MultiplePoint { point: String, vertex: usize, vertex_kind: &'static str, position: String, names: Vec<String> },
    #[error("{point}: node above vertex {vertex} has multiplicity {multiplicity}")]
    SingularNode { point: String, vertex: usize, multiplicity: u32 },
    #[error("{point}: section {section} appears {count} times")]
    SectionCount { point: String, section: String, count: usize },
    #[error("{point}: not a tree ({reason})")]
    NotATree { point: String, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SncCertificate {
    pub fibers: usize,
    pub components: usize,
    pub nodes: usize,
    pub special_points_checked: usize,
}

/// Checks that sections and fiber components over the locus form an SNC divisor in a
/// smooth total space.
pub fn snc_certificate(fam: &StableFamily) -> Result<SncCertificate, SncFailure> {
    let mut cert = SncCertificate { fibers: 0, components: 0, nodes: 0, special_points_checked: 0 };
    for tree in &fam.special_fibers {
        let key = tree.point.key();
        check_tree_shape(tree).map_err(|reason| SncFailure::NotATree { point: key.clone(), reason })?;
        for s in &fam.sections {
            let count = tree.vertices.iter().flat_map(|v| &v.marked).filter(|(l, _)| *l == s.label).count();
            if count != 1 {
                return Err(SncFailure::SectionCount { point: key.clone(), section: s.label.clone(), count });
            }
        }
        for (i, v) in tree.vertices.iter().enumerate() {
            if v.parent.is_some() && v.multiplicity != 1 {
                return Err(SncFailure::SingularNode { point: key.clone(), vertex: i, multiplicity: v.multiplicity });
            }
            let mut special: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for (label, pos) in &v.marked {
                special.entry(pos.render()).or_default().push(label.clone());
            }
            for c in tree.children(i) {
                let pos = tree.vertices[c].attach.as_ref().map(Position::render).unwrap_or_default();
                special.entry(pos).or_default().push(format!("vertex {c}"));
            }
            for (position, names) in special {
                cert.special_points_checked += 1;
                if names.len() > 1 {
                    return Err(SncFailure::MultiplePoint {
                        point: key.clone(),
                        vertex: i,
                        vertex_kind: v.kind.as_str(),
                        position,
                        names,
                    });
                }
            }
        }
        cert.fibers += 1;
        cert.components += tree.vertices.len();
        cert.nodes += tree.edge_count();
    }
    Ok(cert)
}

/// #edges = #vertices - 1, every vertex reaches the root, distances are graph distances.
pub fn check_tree_shape(tree: &FiberTree) -> Result<(), String> {
    let n = tree.vertices.len();
    let roots = tree.vertices.iter().filter(|v| v.parent.is_none()).count();
    if roots != 1 {
        return Err(format!("{roots} roots"));
    }
    if tree.edge_count() + 1 != n {
        return Err("edge count".into());
    }
    for i in 0..n {
        let mut cur = i;
        let mut steps: u32 = 0;
        while let Some(p) = tree.vertices[cur].parent {
            if p >= n || steps as usize > n {
                return Err(format!("vertex {i} does not reach the root"));
            }
            cur = p;
            steps += 1;
        }
        if tree.vertices[i].distance != steps {
            return Err(format!("vertex {i} has distance label {} but graph distance {steps}", tree.vertices[i].distance));
        }
        if tree.vertices[i].parent.is_some() && tree.vertices[i].attach.is_none() {
            return Err(format!("vertex {i} has no attach position"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::ruled::LabeledSection;

    fn sec(label: &str, e: u32, c: &[i64]) -> LabeledSection {
        LabeledSection::new(label, Section::Finite(BinaryForm::from_ints(e, c).unwrap()))
    }

    fn at0() -> BasePoint {
        BasePoint::Rational(rat(0))
    }

    fn jets(e: u32, charts: &[(&str, &[i64])], order: usize) -> Vec<(String, LocalJet)> {
        charts
            .iter()
            .map(|(l, c)| (l.to_string(), BinaryForm::from_ints(e, c).unwrap().jet_at(&at0(), order)))
            .collect()
    }

    fn shape(t: &FiberTree) -> Vec<(Option<usize>, u32, Vec<String>)> {
        t.vertices
            .iter()
            .map(|v| (v.parent, v.multiplicity, v.marked.iter().map(|(l, p)| format!("{l}@{p}")).collect()))
            .collect()
    }

    #[test]
    fn locus_examples() {
        let z = discriminant_locus(&vec![sec("a", 1, &[]), sec("b", 1, &[0, 1]), sec("c", 1, &[1])], 16).unwrap();
        let pts: Vec<String> = z.points.iter().map(|p| p.point.key()).collect();
        // c = t0 and a = 0 meet where t0 vanishes
        assert_eq!(pts, vec!["t=0", "t=1", "t=inf"]);
        assert_eq!(z.points[0].collisions, vec![Collision { left: "a".into(), right: "b".into(), order: 1 }]);
        assert_eq!(z.points[1].collisions, vec![Collision { left: "b".into(), right: "c".into(), order: 1 }]);
        let none = discriminant_locus(&vec![sec("a", 0, &[]), sec("b", 0, &[1])], 16).unwrap();
        assert!(none.points.is_empty());
        let sq = discriminant_locus(&vec![sec("a", 2, &[]), sec("b", 2, &[0, 0, 1])], 16).unwrap();
        assert_eq!(sq.points[0].collisions[0].order, 2);
        let same = discriminant_locus(&vec![sec("a", 1, &[2]), sec("b", 1, &[2])], 16);
        assert_eq!(same, Err(StabilizationError::NotDistinct("a".into(), "b".into())));
    }

    #[test]
    fn tree_with_one_component() {
        let t = collision_tree(&at0(), &jets(1, &[("s0", &[]), ("s1", &[0, 1]), ("s2", &[0, 2]), ("one", &[1])], 2))
            .unwrap();
        assert_eq!(
            shape(&t),
            vec![
                (None, 0, vec!["one@1".to_string()]),
                (Some(0), 1, vec!["s0@0".into(), "s1@1".into(), "s2@2".into()]),
            ]
        );
    }

    #[test]
    fn nested_tree() {
        let t = collision_tree(&at0(), &jets(2, &[("a", &[]), ("b", &[0, 1]), ("c", &[0, 1, 1])], 3)).unwrap();
        assert_eq!(
            shape(&t),
            vec![
                (None, 0, vec![]),
                (Some(0), 1, vec!["a@0".to_string()]),
                (Some(1), 1, vec!["b@0".to_string(), "c@1".to_string()]),
            ]
        );
        assert_eq!(t.vertices[2].attach, Some(Position::Finite(Nf::rational(&at0().field(), rat(1)))));
    }

    #[test]
    fn no_collision_single_root() {
        let t = collision_tree(&at0(), &jets(0, &[("a", &[]), ("b", &[1])], 1)).unwrap();
        assert_eq!(shape(&t), vec![(None, 0, vec!["a@0".to_string(), "b@1".to_string()])]);
    }

    #[test]
    fn stabilize_belyi_output() {
        let secs = vec![sec("a", 2, &[]), sec("b", 2, &[0, -1]), LabeledSection::new("inf", Section::Infinity)];
        let fam = stabilize(RuledSurface::new(2), &secs, &StabilizationConfig::default()).unwrap();
        assert_eq!(fam.special_fibers.len(), 2);
        assert_eq!(fam.special_fibers[1].point, BasePoint::Infinity);
        let t = &fam.special_fibers[0];
        assert_eq!(
            shape(t),
            vec![(None, 0, vec!["inf@inf".to_string()]), (Some(0), 1, vec!["a@0".to_string(), "b@-1".to_string()])]
        );
        assert!(snc_certificate(&fam).is_ok());
        let never = stabilize(RuledSurface::new(0), &vec![sec("a", 0, &[]), sec("b", 0, &[1])], &Default::default())
            .unwrap();
        assert!(never.special_fibers.is_empty());
    }

    #[test]
    fn two_points_of_locus() {
        let secs = vec![sec("z", 1, &[]), sec("t", 1, &[0, 1]), sec("one", 1, &[1]), LabeledSection::new("inf", Section::Infinity)];
        let fam = stabilize(RuledSurface::new(1), &secs, &Default::default()).unwrap();
        assert_eq!(fam.special_fibers.len(), 3);
        for t in &fam.special_fibers {
            assert_eq!(t.vertices.len(), 2);
        }
    }

    #[test]
    fn chain_insertion() {
        let secs = vec![sec("a", 2, &[]), sec("b", 2, &[0, 0, 1])];
        let fam = stabilize(RuledSurface::new(2), &secs, &Default::default()).unwrap();
        assert_eq!(fam.special_fibers[0].vertices[1].multiplicity, 2);
        assert!(matches!(snc_certificate(&fam), Err(SncFailure::SingularNode { multiplicity: 2, .. })));
        let smooth = smooth_total_space(&fam);
        let t = &smooth.special_fibers[0];
        assert_eq!(t.vertices.len(), 3);
        assert_eq!(t.vertices[1].kind, VertexKind::Chain);
        assert!(t.vertices.iter().skip(1).all(|v| v.multiplicity == 1));
        assert_eq!(smooth_total_space(&smooth), smooth);
        assert!(snc_certificate(&smooth).is_ok());
        let simple = stabilize(RuledSurface::new(1), &vec![sec("a", 1, &[]), sec("b", 1, &[0, 1])], &Default::default())
            .unwrap();
        assert_eq!(smooth_total_space(&simple).special_fibers, simple.special_fibers);
    }

    #[test]
    fn unmodified_family_fails() {
        let secs = vec![sec("p", 1, &[0, 1]), sec("m", 1, &[0, -1])];
        let locus = discriminant_locus(&secs, 16).unwrap();
        let fam = StableFamily::unmodified(RuledSurface::new(1), secs, locus);
        match snc_certificate(&fam) {
            Err(SncFailure::MultiplePoint { point, names, .. }) => {
                assert_eq!(point, "t=0");
                assert_eq!(names, vec!["p".to_string(), "m".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn algebraic_point_tree() {
        // a = 0 and b = t^2 - 2 meet at t = sqrt 2 and its conjugate
        let secs = vec![sec("a", 2, &[]), sec("b", 2, &[-2, 0, 1])];
        let fam = stabilize(RuledSurface::new(2), &secs, &Default::default()).unwrap();
        assert_eq!(fam.special_fibers.len(), 1);
        assert_eq!(fam.special_fibers[0].point.conjugates(), 2);
        assert_eq!(fam.special_fibers[0].vertices.len(), 2);
        let capped = stabilize(RuledSurface::new(2), &secs, &StabilizationConfig { extension_cap: 1 });
        assert!(matches!(capped, Err(StabilizationError::ExtensionCap { degree: 2, cap: 1 })));
    }
}

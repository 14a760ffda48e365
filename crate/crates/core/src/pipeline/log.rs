//! The resolution log: one JSON object per line, keys in sorted order.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::rational::{fmt_rational, parse_rational};
use crate::algebra::{Poly, Rational, UPoly};
use crate::belyi::DistinctnessWitness;
use crate::ruled::{BinaryForm, HorizontalDivisor, LabeledSection, Section, SectionList};
use crate::stabilization::{FiberTree, Position};

pub const FORMAT_VERSION: u32 = 1;

pub type Entry = Value;

/// An entry of the given kind; `fields` must be an object.
pub fn entry(kind: &str, fields: Value) -> Entry {
    let mut map = match fields {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    map.insert("kind".into(), Value::String(kind.into()));
    Value::Object(map)
}

pub fn kind(e: &Entry) -> &str {
    e.get("kind").and_then(Value::as_str).unwrap_or("")
}

pub fn to_text(entries: &[Entry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("values serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_text(text: &str) -> Result<Vec<Entry>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn upoly(p: &UPoly<Rational>, var: &str) -> Value {
    Value::String(p.render(var))
}

pub fn form(f: &BinaryForm) -> Value {
    let coeffs: Vec<Value> = (0..=f.degree() as usize).map(|i| rational(&f.chart().coeff(i))).collect();
    json!({ "degree": f.degree(), "coeffs": coeffs, "text": f.to_string() })
}

pub fn form_from(v: &Value) -> Result<BinaryForm, String> {
    let degree = v.get("degree").and_then(Value::as_u64).ok_or("form without degree")? as u32;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or("form without coefficients")?
        .iter()
        .map(|c| c.as_str().and_then(parse_rational).ok_or_else(|| format!("bad coefficient {c}")))
        .collect::<Result<Vec<_>, _>>()?;
    BinaryForm::new(degree, UPoly::new((), coeffs)).map_err(|e| e.to_string())
}

pub fn section(s: &LabeledSection) -> Value {
    let f = match &s.section {
        Section::Finite(f) => form(f),
        Section::Infinity => Value::String("inf".into()),
    };
    json!({ "label": s.label, "form": f })
}

pub fn sections(list: &SectionList) -> Value {
    Value::Array(list.iter().map(section).collect())
}

pub fn section_from(v: &Value) -> Result<LabeledSection, String> {
    let label = v.get("label").and_then(Value::as_str).ok_or("section without label")?;
    let f = v.get("form").ok_or("section without form")?;
    let s = if f.as_str() == Some("inf") { Section::Infinity } else { Section::Finite(form_from(f)?) };
    Ok(LabeledSection::new(label, s))
}

pub fn sections_from(v: &Value) -> Result<SectionList, String> {
    v.as_array().ok_or("section list expected")?.iter().map(section_from).collect()
}

pub fn divisor(b: &HorizontalDivisor) -> Value {
    json!({ "twist_e": b.twist_e(), "phis": b.phis().iter().map(form).collect::<Vec<_>>() })
}

pub fn witnesses(w: &[DistinctnessWitness]) -> Value {
    Value::Array(w.iter().map(|w| json!({ "left": w.left, "right": w.right, "difference": form(&w.difference) })).collect())
}

pub fn position(p: &Position) -> Value {
    Value::String(p.render())
}

pub fn tree(t: &FiberTree) -> Value {
    let vertices: Vec<Value> = t
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "id": i,
                "kind": v.kind.as_str(),
                "parent": v.parent,
                "attach": v.attach.as_ref().map(position),
                "multiplicity": v.multiplicity,
                "level": v.level,
                "distance": v.distance,
                "marked": v.marked.iter().map(|(l, p)| json!([l, position(p)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "point": t.point.key(), "conjugates": t.point.conjugates(), "vertices": vertices })
}

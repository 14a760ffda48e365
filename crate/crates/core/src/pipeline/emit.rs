//! DOT and SVG diagrams of the fiber trees and fans recorded in a log.

use std::fmt::Write;

use serde_json::Value;

use super::log::{self, Entry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            _ => Err(format!("unknown format {s}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    /// Smoothed special fiber over a point, e.g. "t=0".
    Tree(String),
    /// Fan by index or crossing key.
    Fan(String),
}

fn trees(entries: &[Entry]) -> impl Iterator<Item = &Entry> {
    entries.iter().filter(|e| log::kind(e) == "chain_insertion")
}

fn fans(entries: &[Entry]) -> impl Iterator<Item = &Entry> {
    entries.iter().filter(|e| log::kind(e) == "fan_subdivision")
}

fn str_field<'a>(e: &'a Entry, key: &str) -> &'a str {
    e.get(key).and_then(Value::as_str).unwrap_or("")
}

/// One line per target, or "no targets".
pub fn list_targets(entries: &[Entry]) -> String {
    let mut out = String::new();
    for t in trees(entries) {
        let n = t.get("vertices").and_then(Value::as_array).map_or(0, Vec::len);
        writeln!(out, "tree {} ({n} components)", str_field(t, "point")).unwrap();
    }
    for f in fans(entries) {
        let id = f.get("id").and_then(Value::as_u64).unwrap_or(0);
        writeln!(out, "fan {id} at {} chain {}", str_field(f, "crossing"), f.get("chain").unwrap_or(&Value::Null)).unwrap();
    }
    if out.is_empty() {
        out.push_str("no targets\n");
    }
    out
}

pub fn emit(entries: &[Entry], target: &Target, format: Format) -> Result<String, String> {
    match target {
        Target::Tree(p) => {
            let t = trees(entries).find(|t| str_field(t, "point") == p).ok_or_else(|| format!("no tree at {p}"))?;
            Ok(match format {
                Format::Dot => tree_dot(t),
                Format::Svg => tree_svg(t),
            })
        }
        Target::Fan(id) => {
            let f = fans(entries)
                .find(|f| f.get("id").and_then(Value::as_u64).map(|i| i.to_string()).as_deref() == Some(id) || str_field(f, "crossing") == id)
                .ok_or_else(|| format!("no fan {id}"))?;
            Ok(match format {
                Format::Dot => fan_dot(f),
                Format::Svg => fan_svg(f),
            })
        }
    }
}

struct TreeView {
    kinds: Vec<String>,
    parents: Vec<Option<usize>>,
    attach: Vec<String>,
    marked: Vec<Vec<(String, String)>>,
}

fn tree_view(t: &Entry) -> TreeView {
    let vs = t.get("vertices").and_then(Value::as_array).cloned().unwrap_or_default();
    let mut view = TreeView { kinds: vec![], parents: vec![], attach: vec![], marked: vec![] };
    for v in &vs {
        view.kinds.push(str_field(v, "kind").to_string());
        view.parents.push(v.get("parent").and_then(Value::as_u64).map(|p| p as usize));
        view.attach.push(str_field(v, "attach").to_string());
        let m = v.get("marked").and_then(Value::as_array).cloned().unwrap_or_default();
        view.marked.push(
            m.iter()
                .map(|p| (p[0].as_str().unwrap_or("").to_string(), p[1].as_str().unwrap_or("").to_string()))
                .collect(),
        );
    }
    view
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn tree_dot(t: &Entry) -> String {
    let v = tree_view(t);
    let mut out = format!("graph \"fiber {}\" {{\n", str_field(t, "point"));
    for (i, k) in v.kinds.iter().enumerate() {
        writeln!(out, "  v{i} [shape=box, label=\"{k} {i}\"];").unwrap();
    }
    for (i, p) in v.parents.iter().enumerate() {
        if let Some(p) = p {
            writeln!(out, "  v{p} -- v{i} [label=\"{}\"];", v.attach[i]).unwrap();
        }
    }
    for (i, ms) in v.marked.iter().enumerate() {
        for (label, pos) in ms {
            let id = format!("m_{label}").replace(['=', '.', ' '], "_");
            writeln!(out, "  {id} [shape=plaintext, label=\"{label}\"];").unwrap();
            writeln!(out, "  v{i} -- {id} [label=\"{pos}\", style=dashed];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn tree_svg(t: &Entry) -> String {
    let v = tree_view(t);
    let n = v.kinds.len();
    let depth: Vec<usize> = (0..n)
        .map(|i| {
            let (mut d, mut c) = (0, i);
            while let Some(p) = v.parents[c] {
                d += 1;
                c = p;
            }
            d
        })
        .collect();
    let mut column = vec![0usize; n];
    let mut per_depth: Vec<usize> = vec![0; n + 1];
    for i in 0..n {
        column[i] = per_depth[depth[i]];
        per_depth[depth[i]] += 1;
    }
    let pos = |i: usize| (40 + 160 * column[i], 40 + 120 * depth[i]);
    let width = 160 * per_depth.iter().max().copied().unwrap_or(1).max(1) + 200;
    let height = 120 * (depth.iter().max().copied().unwrap_or(0) + 1) + 80;
    let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\">\n");
    for i in 0..n {
        if let Some(p) = v.parents[i] {
            let ((x1, y1), (x2, y2)) = (pos(p), pos(i));
            writeln!(out, "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>", x1 + 50, y1 + 15, x2 + 50, y2 + 15).unwrap();
        }
    }
    for i in 0..n {
        let (x, y) = pos(i);
        writeln!(out, "  <rect x=\"{x}\" y=\"{y}\" width=\"100\" height=\"30\" fill=\"white\" stroke=\"black\"/>").unwrap();
        writeln!(out, "  <text x=\"{}\" y=\"{}\" font-size=\"12\">{} {i}</text>", x + 6, y + 20, escape(&v.kinds[i])).unwrap();
        for (j, (label, p)) in v.marked[i].iter().enumerate() {
            writeln!(out, "  <text x=\"{}\" y=\"{}\" font-size=\"10\">{} @ {}</text>", x + 6, y + 44 + 12 * j, escape(label), escape(p)).unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

fn rays(f: &Entry) -> Vec<[i64; 2]> {
    f.get("fan")
        .and_then(|x| x.get("rays"))
        .and_then(Value::as_array)
        .map(|rs| rs.iter().map(|r| [r[0].as_i64().unwrap_or(0), r[1].as_i64().unwrap_or(0)]).collect())
        .unwrap_or_default()
}

fn fan_dot(f: &Entry) -> String {
    let rs = rays(f);
    let mut out = format!("graph \"fan {}\" {{\n", str_field(f, "crossing"));
    for (i, r) in rs.iter().enumerate() {
        writeln!(out, "  r{i} [label=\"({}, {})\"];", r[0], r[1]).unwrap();
    }
    for i in 1..rs.len() {
        let d = rs[i - 1][0] * rs[i][1] - rs[i - 1][1] * rs[i][0];
        writeln!(out, "  r{} -- r{i} [label=\"det {d}\"];", i - 1).unwrap();
    }
    out.push_str("}\n");
    out
}

fn fan_svg(f: &Entry) -> String {
    let rs = rays(f);
    let scale = 200.0 / rs.iter().map(|r| r[0].abs().max(r[1].abs())).max().unwrap_or(1).max(1) as f64;
    let (cx, cy) = (260.0, 260.0);
    let mut out = String::from("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"300\">\n");
    for r in &rs {
        let (x, y) = (cx + r[0] as f64 * scale, cy - r[1] as f64 * scale);
        writeln!(out, "  <line x1=\"{cx}\" y1=\"{cy}\" x2=\"{x:.1}\" y2=\"{y:.1}\" stroke=\"black\"/>").unwrap();
        writeln!(out, "  <text x=\"{x:.1}\" y=\"{y:.1}\" font-size=\"11\">({}, {})</text>", r[0], r[1]).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

//! Independent audit of a resolution log: per-entry certificate rechecks on the logged
//! values, a replay from the header and the logged choices, and a seeded rerun that must
//! reproduce the logged choices, each compared line by line.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use super::input::{InputFile, PipelineConfig};
use super::log::{self, Entry};
use super::run::{execute, header, Choices, LoggedChoices, SeededChoices};
use crate::ruled::Section;
use crate::toric::{check_chain, ExceptionalChain};

#[derive(Clone, Debug, PartialEq)]
pub struct Divergence {
    pub index: usize,
    pub kind: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub entries_checked: usize,
    pub divergence: Option<Divergence>,
    /// "pass" when the log ends in a passing result entry, otherwise the logged error code.
    pub status: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none() && self.status == "pass"
    }

    pub fn render(&self) -> String {
        match &self.divergence {
            None if self.status == "pass" => format!("pass ({} entries recomputed)", self.entries_checked),
            None => format!("consistent log of a failed run ({}); {} entries recomputed", self.status, self.entries_checked),
            Some(d) => format!("fail at entry {} ({}): {}", d.index, d.kind, d.reason),
        }
    }
}

fn diverge(index: usize, kind: &str, reason: impl Into<String>) -> VerifyReport {
    VerifyReport {
        entries_checked: index,
        divergence: Some(Divergence { index, kind: kind.to_string(), reason: reason.into() }),
        status: "unverified".into(),
    }
}

/// Verifies the text of a log.
pub fn verify(text: &str) -> VerifyReport {
    let entries = match log::parse_text(text) {
        Ok(e) => e,
        Err(e) => return diverge(0, "parse", e),
    };
    let Some(first) = entries.first().filter(|e| log::kind(e) == "header") else {
        return diverge(0, "header", "log does not start with a header");
    };
    let input: InputFile = match first.get("input").cloned().map(serde_json::from_value) {
        Some(Ok(i)) => i,
        _ => return diverge(0, "header", "input block unreadable"),
    };
    let cfg: PipelineConfig = match first.get("config").cloned().map(serde_json::from_value) {
        Some(Ok(c)) => c,
        _ => return diverge(0, "header", "config block unreadable"),
    };
    let Some(mode) = input.mode().ok() else {
        return diverge(0, "header", "input block has no valid mode");
    };
    if header(&input, &cfg, mode) != *first {
        return diverge(0, "header", "input hash, seed or versions do not match the recorded input");
    }

    // a malformed log must be reported, not crash the checker
    let guarded = |choices: &mut dyn Choices| {
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(&input, &cfg, choices)))
    };
    let Ok(replay) = guarded(&mut LoggedChoices::new(&entries)) else {
        return diverge(0, "replay", "recomputation from the logged choices aborted");
    };
    let Ok(rerun) = guarded(&mut SeededChoices::new(cfg.seed)) else {
        return diverge(0, "replay", "seeded recomputation aborted");
    };
    let mut labels = BTreeSet::new();
    for (i, e) in entries.iter().enumerate() {
        let kind = log::kind(e);
        if let Err(reason) = audit(e, &mut labels) {
            return diverge(i, kind, reason);
        }
        match replay.entries.get(i) {
            None => return diverge(i, kind, "entry has no counterpart in the replay"),
            Some(r) if r != e => {
                return diverge(i, kind, format!("recomputation differs: {}", first_difference(e, r)));
            }
            _ => {}
        }
        match rerun.entries.get(i) {
            Some(r) if r == e => {}
            Some(r) => return diverge(i, kind, format!("seeded draws differ: {}", first_difference(e, r))),
            None => return diverge(i, kind, "seeded rerun ends earlier"),
        }
    }
    if replay.entries.len() != entries.len() || rerun.entries.len() != entries.len() {
        let kind = replay.entries.get(entries.len()).map(log::kind).unwrap_or("");
        return diverge(entries.len(), kind, "log is incomplete");
    }
    let status = match entries.last() {
        Some(e) if log::kind(e) == "result" => e.get("status").and_then(Value::as_str).unwrap_or("").to_string(),
        Some(e) if log::kind(e) == "error" => e.get("code").and_then(Value::as_str).unwrap_or("error").to_string(),
        _ => "incomplete".into(),
    };
    VerifyReport { entries_checked: entries.len(), divergence: None, status }
}

/// Path of the first differing leaf between two JSON values.
fn first_difference(a: &Value, b: &Value) -> String {
    fn walk(a: &Value, b: &Value, path: String) -> Option<String> {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let keys: BTreeSet<&String> = x.keys().chain(y.keys()).collect();
                keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => walk(u, v, format!("{path}.{k}")),
                    _ => Some(format!("{path}.{k}")),
                })
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                x.iter().zip(y).enumerate().find_map(|(i, (u, v))| walk(u, v, format!("{path}[{i}]")))
            }
            _ if a == b => None,
            _ => Some(format!("{path}: logged {a}, recomputed {b}")),
        }
    }
    walk(a, b, String::new()).unwrap_or_default()
}

/// Certificate rechecks that read only the entry itself (and labels seen earlier).
fn audit(e: &Entry, labels: &mut BTreeSet<String>) -> Result<(), String> {
    match log::kind(e) {
        "belyi_result" => {
            let sections = log::sections_from(e.get("sections").unwrap_or(&Value::Null))
                .map_err(|r| format!("distinctness recheck: {r}"))?;
            let finite: Vec<_> = sections
                .iter()
                .filter_map(|s| match &s.section {
                    Section::Finite(f) => Some((s.label.clone(), f.clone())),
                    Section::Infinity => None,
                })
                .collect();
            for (i, (a, f)) in finite.iter().enumerate() {
                for (b, g) in &finite[i + 1..] {
                    if f.degree() != g.degree() {
                        return Err(format!("distinctness recheck: {a} and {b} have different degrees"));
                    }
                    if f.sub(g).is_zero() {
                        return Err(format!("distinctness recheck: {a} = {b}"));
                    }
                }
            }
            labels.clear();
            labels.extend(sections.into_iter().map(|s| s.label));
            Ok(())
        }
        "chain_insertion" => audit_tree(e, labels).map_err(|r| format!("SNC recheck: {r}")),
        "fan_subdivision" => {
            let c: ExceptionalChain = serde_json::from_value(e.clone()).map_err(|r| format!("unreadable chain: {r}"))?;
            check_chain(&c).map(|_| ()).map_err(|r| format!("unimodularity recheck: {r}"))
        }
        _ => Ok(()),
    }
}

/// Tree shape, one marked point per section, distinct special points per component and
/// multiplicity one at every node.
fn audit_tree(e: &Entry, labels: &BTreeSet<String>) -> Result<(), String> {
    let vs = e.get("vertices").and_then(Value::as_array).ok_or("no vertices")?;
    let n = vs.len();
    let mut parents = Vec::with_capacity(n);
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut special: Vec<BTreeSet<String>> = vec![BTreeSet::new(); n];
    for (i, v) in vs.iter().enumerate() {
        let parent = v.get("parent").and_then(Value::as_u64).map(|p| p as usize);
        if let Some(p) = parent {
            if p >= n {
                return Err(format!("vertex {i} has no parent {p}"));
            }
            if v.get("multiplicity").and_then(Value::as_u64) != Some(1) {
                return Err(format!("node above vertex {i} is not of multiplicity one"));
            }
            let at = v.get("attach").and_then(Value::as_str).ok_or(format!("vertex {i} has no attach point"))?;
            if !special[p].insert(at.to_string()) {
                return Err(format!("two special points at {at} on vertex {p}"));
            }
        }
        parents.push(parent);
        for m in v.get("marked").and_then(Value::as_array).into_iter().flatten() {
            let label = m.get(0).and_then(Value::as_str).ok_or("bad marked point")?;
            let at = m.get(1).and_then(Value::as_str).ok_or("bad marked point")?;
            *seen.entry(label.to_string()).or_default() += 1;
            if !special[i].insert(at.to_string()) {
                return Err(format!("section {label} meets another special point at {at} on vertex {i}"));
            }
        }
    }
    if parents.iter().filter(|p| p.is_none()).count() != 1 {
        return Err("not exactly one root".into());
    }
    for i in 0..n {
        let (mut cur, mut steps) = (i, 0);
        while let Some(p) = parents[cur] {
            cur = p;
            steps += 1;
            if steps > n {
                return Err("cycle in the parent relation".into());
            }
        }
    }
    for l in labels {
        if seen.get(l) != Some(&1) {
            return Err(format!("section {l} does not meet the fiber exactly once"));
        }
    }
    if seen.len() != labels.len() {
        return Err("unknown section on the fiber".into());
    }
    Ok(())
}

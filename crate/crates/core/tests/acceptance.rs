//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfres::algebra::rational::{rat, ratio};
use surfres::algebra::{BasePoint, Poly};
use surfres::belyi::{belyi_reduce, branch_image, branch_image_by_resultant, build_pb, BelyiConfig};
use surfres::pipeline::{log, run, verify, InputFile, PipelineConfig};
use surfres::ruled::RuledSurface;
use surfres::stabilization::{
    collision_tree, smooth_total_space, snc_certificate, stabilize, Position, StabilizationConfig,
};
use surfres::toric::{hj_evaluate, hj_resolve, CyclicQuotientType};

use support::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn belyi_degree_drop() -> Outcome {
    let mut steps_total = 0;
    for case in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + case);
        let data = random_divisor(&mut rng, 2..=5);
        let b = data.divisor();
        let n = data.fiber_degree();
        if case % 4 == 0 {
            let m = build_pb(&b);
            let by_res = branch_image_by_resultant(&m).map_err(|e| format!("case {case}: {e}"))?;
            let direct = branch_image(&m).map_err(|e| format!("case {case}: {e}"))?;
            ensure(by_res.normalized() == direct.normalized(), || format!("case {case}: resultant oracle disagrees"))?;
        }
        let trace = belyi_reduce(&b, &vec![], &BelyiConfig::default(), &mut rng).map_err(|e| format!("case {case}: {e}"))?;
        ensure(trace.steps.len() < n, || format!("case {case}: {} steps for N = {n}", trace.steps.len()))?;
        for (k, step) in trace.steps.iter().enumerate() {
            let d = step.map.degree();
            let image = branch_image(&step.map).map_err(|e| format!("case {case}: {e}"))?;
            ensure(image.fiber_degree() == d - 1 && step.residual.fiber_degree() == d - 1, || {
                format!("case {case} step {k}: degree {d} map has branch degree {}", image.fiber_degree())
            })?;
        }
        let finite = trace.finite_sections();
        ensure(trace.certificate.len() == finite.len() * finite.len().saturating_sub(1) / 2, || {
            format!("case {case}: incomplete distinctness certificate")
        })?;
        for w in &trace.certificate {
            let (l, r) = (finite.iter().find(|s| s.0 == w.left), finite.iter().find(|s| s.0 == w.right));
            let (Some(l), Some(r)) = (l, r) else { return Err(format!("case {case}: witness for unknown section")) };
            ensure(!w.difference.is_zero() && l.1.sub(r.1) == w.difference, || format!("case {case}: bad witness"))?;
        }
        steps_total += trace.steps.len();
    }
    Ok(format!("100 divisors, {steps_total} reduction steps"))
}

fn pb_roundtrip() -> Outcome {
    for case in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + case);
        let data = random_divisor(&mut rng, 1..=6);
        let b = data.divisor();
        let d = data.fiber_degree();
        let m = build_pb(&b);
        ensure(m.chart_poly() == expansion_by_text(&data), || format!("case {case}: expansion differs"))?;
        ensure(m.zero_fiber_divisor() == b.normalized(), || format!("case {case}: zero fiber is not B"))?;
        let fiber = b.normalized().fiber_poly();
        let renamed = Poly::from_terms(&["t", "eta"], fiber.terms().map(|(mono, c)| (mono.0.clone(), c.clone())));
        ensure(renamed == m.chart_poly(), || format!("case {case}: defining form differs"))?;
        ensure(m.infinity_preimage_multiplicity() == Some(d as u32), || format!("case {case}: infinity multiplicity"))?;
        let (first, _) = m.homogeneous_components();
        let pure: Vec<_> = first.terms().filter(|(mono, _)| mono.0[2] == 0).collect();
        ensure(pure.len() == 1 && pure[0].0 .0 == vec![0, d as u32, 0] && *pure[0].1 == rat(1), || {
            format!("case {case}: y^0 part is not x^d")
        })?;
    }
    Ok("100 maps".into())
}

fn stabilization_oracle() -> Outcome {
    let cfg = StabilizationConfig::default();
    let mut algebraic_cases = 0;
    let mut components = 0;
    for case in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + case);
        let algebraic = case % 4 == 1;
        let contact = rng.gen_range(1..=4);
        let fam = random_jet_family(&mut rng, algebraic, contact);
        if matches!(fam.point, BasePoint::Algebraic(_)) {
            algebraic_cases += 1;
        }
        let sections = fam.sections();
        let labels: Vec<String> = sections.iter().map(|s| s.label.clone()).collect();
        let jets: Vec<_> = sections
            .iter()
            .map(|s| (s.label.clone(), s.section.form().unwrap().jet_at(&fam.point, contact + 1)))
            .collect();
        let tree = collision_tree(&fam.point, &jets).map_err(|e| format!("case {case}: {e}"))?;
        let expected = blowup_oracle(&fam.point, &sections);
        ensure(render_fiber_tree(&tree) == expected, || {
            format!("case {case}: {} vs oracle {expected}", render_fiber_tree(&tree))
        })?;
        tree_invariants(&tree, &labels).map_err(|e| format!("case {case}: {e}"))?;
        components += tree.vertices.len();

        let family = stabilize(RuledSurface::new(fam.twist()), &sections, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        let at_point = family.fiber_at(&fam.point);
        ensure(render_fiber_tree(&at_point) == expected, || format!("case {case}: stabilize differs from collision_tree"))?;
        for t in &family.special_fibers {
            tree_invariants(t, &labels).map_err(|e| format!("case {case} at {}: {e}", t.point.key()))?;
        }
        let smooth = smooth_total_space(&family);
        ensure(smooth.special_fibers.iter().flat_map(|t| t.vertices.iter().skip(1)).all(|v| v.multiplicity == 1), || {
            format!("case {case}: node of multiplicity > 1 after smoothing")
        })?;
        ensure(smooth_total_space(&smooth) == smooth, || format!("case {case}: smoothing not idempotent"))?;
        snc_certificate(&smooth).map_err(|e| format!("case {case}: {e}"))?;

        let mut probes = 0;
        while probes < 10 {
            let p = BasePoint::Rational(ratio(rng.gen_range(-40..=40), rng.gen_range(1..=3)));
            if family.locus.points.iter().any(|lp| lp.point == p) {
                continue;
            }
            probes += 1;
            let f = family.fiber_at(&p);
            let mut positions: Vec<String> = f.vertices[0].marked.iter().map(|(_, x)| x.render()).collect();
            positions.sort();
            positions.dedup();
            ensure(f.vertices.len() == 1 && positions.len() == sections.len(), || {
                format!("case {case}: fiber at {} is not a single component with distinct points", p.key())
            })?;
            ensure(f.vertices[0].marked.iter().all(|(_, x)| *x != Position::Infinity), || "unexpected infinity".into())?;
        }
    }
    ensure(algebraic_cases >= 20, || format!("only {algebraic_cases} number-field cases"))?;
    Ok(format!("200 families ({algebraic_cases} over number fields, {components} components)"))
}

fn hj_fans() -> Outcome {
    let mut pairs = 0;
    for m in 2..=40u32 {
        for q in 1..m {
            if gcd(m, q) != 1 {
                continue;
            }
            pairs += 1;
            let (chain, fan) = hj_resolve(&CyclicQuotientType { m, q }).map_err(|e| format!("({m},{q}): {e}"))?;
            ensure(fan.determinants().iter().all(|&d| d == 1) && fan.is_unimodular(), || format!("({m},{q}): not unimodular"))?;
            ensure(chain.iter().all(|&b| b >= 2), || format!("({m},{q}): entry below 2"))?;
            ensure(hj_evaluate(&chain) == Some(ratio(m as i64, q as i64)), || format!("({m},{q}): fraction mismatch"))?;
            let hull = lattice_hull_boundary(m as i64, q as i64);
            ensure(fan.rays.len() == hull.len() && fan.rays == hull, || {
                format!("({m},{q}): {} rays, hull has {}", fan.rays.len(), hull.len())
            })?;
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn run_input(name: &str) -> Result<(InputFile, String, i32), String> {
    let input = InputFile::load(&input_path(name)).map_err(|e| e.to_string())?;
    let cfg = PipelineConfig::resolve(&input, None, None).map_err(|e| e.to_string())?;
    let out = run(&input, &cfg);
    Ok((input, out.text(), out.exit_code()))
}

fn single_field_faults(text: &str) -> Result<usize, String> {
    let entries = log::parse_text(text)?;
    let mut injected = 0;
    for (i, e) in entries.iter().enumerate() {
        for path in leaf_paths(e) {
            let mut broken = entries.clone();
            let leaf = leaf_mut(&mut broken[i], &path);
            *leaf = perturb(leaf);
            let report = verify(&log::to_text(&broken));
            if report.passed() {
                return Err(format!("fault at entry {i} {path:?} was not detected"));
            }
            injected += 1;
        }
    }
    Ok(injected)
}

fn quadric_cone() -> Outcome {
    let (_, text, code) = run_input("quadric_cone.toml")?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let entries = log::parse_text(&text)?;
    let has_chain = entries.iter().any(|e| {
        log::kind(e) == "fan_subdivision"
            && e["cq_type"] == serde_json::json!({"m": 2, "q": 1})
            && e["chain"] == serde_json::json!([2])
    });
    ensure(has_chain, || "no (2,1) -> [2] chain".into())?;
    let report = verify(&text);
    ensure(report.passed(), || report.render())?;

    let edited = text.replacen("\"chain\":[2]", "\"chain\":[3]", 1);
    let r = verify(&edited);
    ensure(!r.passed() && r.render().contains("unimodularity"), || format!("chain edit: {}", r.render()))?;

    let mut broken = entries.clone();
    let at = broken.iter().position(|e| log::kind(e) == "belyi_result").ok_or("no belyi_result")?;
    let c = &mut broken[at]["sections"][0]["form"]["coeffs"][0];
    *c = perturb(c);
    let r = verify(&log::to_text(&broken));
    ensure(!r.passed(), || "perturbed section coefficient accepted".into())?;

    let injected = single_field_faults(&text)?;
    Ok(format!("{} entries, {injected} single-field faults rejected", entries.len()))
}

fn fibered_cusp() -> Outcome {
    let (_, text, code) = run_input("fibered_cusp.toml")?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let entries = log::parse_text(&text)?;
    for kind in ["belyi_result", "stabilization_tree", "chain_insertion", "snc", "fan_subdivision"] {
        ensure(entries.iter().any(|e| log::kind(e) == kind), || format!("no {kind} entry"))?;
    }
    let last = entries.last().ok_or("empty log")?;
    ensure(log::kind(last) == "result" && last["status"] == "pass", || "run did not pass".into())?;
    let report = verify(&text);
    ensure(report.passed(), || report.render())?;
    let injected = single_field_faults(&text)?;
    let fibers = last["certificates"]["snc_fibers"].as_u64().unwrap_or(0);
    Ok(format!("SNC over {fibers} special fibers, {injected} single-field faults rejected"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_surfres");
    let mut runs = 0;
    for name in ["quadric_cone.toml", "fibered_cusp.toml"] {
        for seed in [None, Some(7u64), Some(12345)] {
            let go = || {
                let mut cmd = std::process::Command::new(bin);
                cmd.arg("resolve").arg(input_path(name));
                if let Some(s) = seed {
                    cmd.arg("--seed").arg(s.to_string());
                }
                cmd.output().map_err(|e| e.to_string())
            };
            let (a, b) = (go()?, go()?);
            ensure(!a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code(), || {
                format!("{name} seed {seed:?}: logs differ")
            })?;
            let (_, text, _) = run_input(name)?;
            if seed.is_none() {
                ensure(text.as_bytes() == a.stdout.as_slice(), || format!("{name}: library and CLI logs differ"))?;
            }
            runs += 2;
        }
    }
    Ok(format!("{runs} runs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("belyi degree drop", belyi_degree_drop, Duration::from_secs(60)),
        ("p_B roundtrip", pb_roundtrip, Duration::from_secs(10)),
        ("stabilization oracle equivalence", stabilization_oracle, Duration::from_secs(120)),
        ("HJ and fan correctness", hj_fans, Duration::from_secs(30)),
        ("end-to-end quadric cone", quadric_cone, Duration::from_secs(300)),
        ("end-to-end fibered cusp", fibered_cusp, Duration::from_secs(300)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > budget => Err(format!("{detail}, but took {took:.1?} (budget {budget:?})")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {name}: {detail} [{took:.1?}]"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason} [{took:.1?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

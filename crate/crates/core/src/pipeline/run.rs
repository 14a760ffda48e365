use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::input::{InputFile, Mode, PipelineConfig};
use super::log::{self, entry, Entry};
use super::{ErrorClass, PipelineError, EXIT_PASS};
use crate::belyi::{belyi_reduce, finish_trace, replay_step, split_residual, BelyiConfig, BelyiError, BelyiTrace};
use crate::projection::{
    blow_up_base, check_base_point, choose_base_point, choose_projection_center, plane_form_divisor, projected_cover,
    BaseChoice, HypersurfaceInput, ProjectedCover, ProjectionConfig,
};
use crate::ruled::{HorizontalDivisor, SectionList};
use crate::stabilization::{smooth_total_space, snc_certificate, stabilize, StabilizationConfig};
use crate::toric::{assemble_resolution, branch_data, CoverModel};

/// Source of the generic choices of a run: seeded draws, or the values recorded in a log.
pub trait Choices {
    fn center(&mut self, inp: &HypersurfaceInput, cfg: &PipelineConfig) -> Result<ProjectedCover, PipelineError>;
    fn base(&mut self, pc: &ProjectedCover, cfg: &PipelineConfig) -> Result<BaseChoice, PipelineError>;
    fn belyi(&mut self, b: &HorizontalDivisor, marked: &SectionList, cfg: &PipelineConfig) -> Result<BelyiTrace, PipelineError>;
}

/// All randomness comes from one ChaCha generator seeded with the configured seed.
pub struct SeededChoices {
    rng: ChaCha8Rng,
}

impl SeededChoices {
    pub fn new(seed: u64) -> Self {
        SeededChoices { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

fn projection_config(cfg: &PipelineConfig) -> ProjectionConfig {
    ProjectionConfig {
        retry_cap: cfg.retry_cap,
        coord_bound: cfg.coord_bound,
        sampled_lines: cfg.sampled_lines,
        irreducibility_trials: cfg.irreducibility_trials,
    }
}

fn belyi_config(cfg: &PipelineConfig) -> BelyiConfig {
    BelyiConfig { degree_cap: cfg.degree_cap, retry_cap: cfg.retry_cap, coeff_bound: cfg.translation_bound }
}

impl Choices for SeededChoices {
    fn center(&mut self, inp: &HypersurfaceInput, cfg: &PipelineConfig) -> Result<ProjectedCover, PipelineError> {
        Ok(choose_projection_center(inp, &projection_config(cfg), &mut self.rng)?)
    }

    fn base(&mut self, pc: &ProjectedCover, cfg: &PipelineConfig) -> Result<BaseChoice, PipelineError> {
        Ok(choose_base_point(pc, &projection_config(cfg), &mut self.rng)?)
    }

    fn belyi(&mut self, b: &HorizontalDivisor, marked: &SectionList, cfg: &PipelineConfig) -> Result<BelyiTrace, PipelineError> {
        Ok(belyi_reduce(b, marked, &belyi_config(cfg), &mut self.rng)?)
    }
}

fn log_error(message: impl Into<String>) -> PipelineError {
    PipelineError::new("log", "log_inconsistent", ErrorClass::Certificate, message)
}

/// Choices read back from a log; every one is re-certified, none is searched for.
pub struct LoggedChoices<'a> {
    entries: &'a [Entry],
}

impl<'a> LoggedChoices<'a> {
    pub fn new(entries: &'a [Entry]) -> Self {
        LoggedChoices { entries }
    }

    fn find(&self, kind: &str) -> Result<&'a Entry, PipelineError> {
        self.entries.iter().find(|e| log::kind(e) == kind).ok_or_else(|| log_error(format!("no {kind} entry")))
    }
}

fn int_array<const N: usize>(v: Option<&Value>, what: &str) -> Result<[i64; N], PipelineError> {
    let a = v.and_then(Value::as_array).ok_or_else(|| log_error(format!("{what} missing")))?;
    let xs: Vec<i64> = a.iter().filter_map(Value::as_i64).collect();
    xs.try_into().map_err(|_| log_error(format!("{what} malformed")))
}

fn uint(v: Option<&Value>, what: &str) -> Result<u64, PipelineError> {
    v.and_then(Value::as_u64).ok_or_else(|| log_error(format!("{what} missing")))
}

impl Choices for LoggedChoices<'_> {
    fn center(&mut self, inp: &HypersurfaceInput, _: &PipelineConfig) -> Result<ProjectedCover, PipelineError> {
        let e = self.find("projection")?;
        let q = int_array::<4>(e.get("center_q"), "center_q")?;
        let draws = uint(e.get("draws"), "draws")? as u32;
        projected_cover(inp, q, draws)?.ok_or_else(|| log_error("logged center lies on X"))
    }

    fn base(&mut self, pc: &ProjectedCover, cfg: &PipelineConfig) -> Result<BaseChoice, PipelineError> {
        let e = self.find("base_point")?;
        let o = int_array::<3>(e.get("o"), "o")?;
        let w = e.get("irreducible_witness").ok_or_else(|| log_error("witness missing"))?;
        let direction = int_array::<3>(w.get("direction"), "witness direction")?;
        let param = w.get("parameter").and_then(Value::as_i64).ok_or_else(|| log_error("witness parameter missing"))?;
        let mut choice = check_base_point(pc, o, cfg.sampled_lines, direction[1], &[param])?
            .ok_or_else(|| log_error("logged base point fails its checks"))?;
        choice.draws = uint(e.get("draws"), "draws")? as u32;
        Ok(choice)
    }

    fn belyi(&mut self, b: &HorizontalDivisor, marked: &SectionList, cfg: &PipelineConfig) -> Result<BelyiTrace, PipelineError> {
        let logged: Vec<&Entry> = self.entries.iter().filter(|e| log::kind(e) == "belyi_step").collect();
        let mut tracked: SectionList = marked.iter().filter(|s| !s.section.is_infinity()).cloned().collect();
        let mut residual = b.normalized();
        let mut steps = Vec::new();
        for (k, e) in logged.iter().enumerate() {
            if split_residual(&residual, k)?.is_some() {
                return Err(log_error(format!("belyi step {k} logged after the residual split")));
            }
            let twist = residual.twist_e() * residual.fiber_degree() as u32;
            if twist > cfg.degree_cap {
                return Err(log_error(format!("belyi step {k} exceeds the degree cap")));
            }
            let translation = log::form_from(e.get("translation").unwrap_or(&Value::Null)).map_err(log_error)?;
            if translation.degree() != twist {
                return Err(log_error(format!("belyi step {k}: translation has degree {}", translation.degree())));
            }
            let draws = uint(e.get("draws"), "draws")? as u32;
            let step = replay_step(&residual, &tracked, k, translation, draws)?
                .ok_or_else(|| log_error(format!("belyi step {k}: translated branch image not reduced")))?;
            tracked = step.sections.clone();
            residual = step.residual.clone();
            steps.push(step);
        }
        let Some(parts) = split_residual(&residual, steps.len())? else {
            let twist = residual.twist_e() * residual.fiber_degree() as u32;
            if twist > cfg.degree_cap {
                return Err(BelyiError::DegreeGuard { twist, cap: cfg.degree_cap }.into());
            }
            return Err(log_error("residual does not split after the logged steps"));
        };
        tracked.extend(parts);
        Ok(finish_trace(b, marked, steps, tracked)?)
    }
}

/// Entries written so far plus the first failure, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub entries: Vec<Entry>,
    pub error: Option<PipelineError>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(EXIT_PASS, PipelineError::exit_code)
    }

    pub fn text(&self) -> String {
        log::to_text(&self.entries)
    }
}

pub fn input_value(input: &InputFile) -> Value {
    serde_json::to_value(input).expect("input serializes")
}

pub fn header(input: &InputFile, cfg: &PipelineConfig, mode: Mode) -> Entry {
    let value = input_value(input);
    let canonical = serde_json::to_string(&value).expect("values serialize");
    let config = serde_json::to_value(cfg).expect("config serializes");
    let config_text = serde_json::to_string(&config).expect("values serialize");
    entry(
        "header",
        json!({
            "format": log::FORMAT_VERSION,
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "mode": mode.as_str(),
            "seed": cfg.seed,
            "config": config,
            "config_sha256": log::sha256_hex(config_text.as_bytes()),
            "input": value,
            "input_sha256": log::sha256_hex(canonical.as_bytes()),
        }),
    )
}

/// Seeded run of the whole pipeline.
pub fn run(input: &InputFile, cfg: &PipelineConfig) -> RunOutcome {
    execute(input, cfg, &mut SeededChoices::new(cfg.seed))
}

/// Runs every stage with the given source of choices, logging as it goes.
pub fn execute(input: &InputFile, cfg: &PipelineConfig, choices: &mut dyn Choices) -> RunOutcome {
    let mut entries = Vec::new();
    let error = stages(input, cfg, choices, &mut entries).err();
    if let Some(e) = &error {
        entries.push(entry(
            "error",
            json!({
                "stage": e.stage,
                "code": e.code,
                "message": e.message,
                "exit_code": e.exit_code(),
                "retryable": e.retryable(),
            }),
        ));
    }
    RunOutcome { entries, error }
}

fn stages(
    input: &InputFile,
    cfg: &PipelineConfig,
    choices: &mut dyn Choices,
    out: &mut Vec<Entry>,
) -> Result<(), PipelineError> {
    let mode = input.mode()?;
    cfg.validate()?;
    out.push(header(input, cfg, mode));
    let (divisor, marked, cover) = match mode {
        Mode::Hypersurface => {
            let inp = input.hypersurface()?;
            let pc = choices.center(&inp, cfg)?;
            out.push(projection_entry(&pc));
            let base = choices.base(&pc, cfg)?;
            out.push(base_entry(&base));
            let blown = blow_up_base(&pc, &base)?;
            out.push(entry(
                "blow_up",
                json!({
                    "twist_e": blown.surface.twist_e,
                    "g": log::poly(&blown.g),
                    "disc": log::poly(&blown.disc),
                    "branch": log::divisor(&blown.b1),
                    "marked": log::sections(&blown.marked),
                }),
            ));
            let cover = if pc.degree_k == 2 {
                CoverModel { order: 2, branch: plane_form_divisor(&blown.disc)?, cyclic: true }
            } else {
                CoverModel { order: pc.degree_k, branch: blown.b1.clone(), cyclic: false }
            };
            (blown.b1, blown.marked, cover)
        }
        Mode::Fibered => {
            let b = input.divisor()?;
            let marked = input.marked()?;
            out.push(entry("divisor", json!({ "branch": log::divisor(&b), "marked": log::sections(&marked) })));
            let cover = CoverModel { order: cfg.cover_order, branch: b.clone(), cyclic: true };
            (b, marked, cover)
        }
    };

    let trace = choices.belyi(&divisor, &marked, cfg)?;
    for (k, step) in trace.steps.iter().enumerate() {
        out.push(entry(
            "belyi_step",
            json!({
                "step": k,
                "degree": step.map.degree(),
                "map": step.map.coeffs().iter().map(log::form).collect::<Vec<_>>(),
                "infinity_multiplicity": step.map.infinity_preimage_multiplicity(),
                "translation": log::form(&step.translation),
                "draws": step.draws,
                "residual": log::divisor(&step.residual),
                "sections": log::sections(&step.sections),
            }),
        ));
    }
    out.push(entry(
        "belyi_result",
        json!({
            "steps": trace.steps.len(),
            "twist_e": trace.final_surface.twist_e,
            "sections": log::sections(&trace.final_sections),
            "distinctness": log::witnesses(&trace.certificate),
        }),
    ));

    let scfg = StabilizationConfig { extension_cap: cfg.extension_cap };
    let fam = stabilize(trace.final_surface, &trace.final_sections, &scfg)?;
    let locus: Vec<Value> = fam
        .locus
        .points
        .iter()
        .map(|p| {
            json!({
                "point": p.point.key(),
                "conjugates": p.point.conjugates(),
                "collisions": p.collisions.iter().map(|c| json!([c.left, c.right, c.order])).collect::<Vec<_>>(),
            })
        })
        .collect();
    out.push(entry("discriminant_locus", json!({ "points": locus, "defining_form": log::form(&fam.locus.defining_form) })));
    for t in &fam.special_fibers {
        out.push(entry("stabilization_tree", log::tree(t)));
    }
    let smooth = smooth_total_space(&fam);
    for t in &smooth.special_fibers {
        out.push(entry("chain_insertion", log::tree(t)));
    }
    let snc = snc_certificate(&smooth)?;
    out.push(entry(
        "snc",
        json!({
            "fibers": snc.fibers,
            "components": snc.components,
            "nodes": snc.nodes,
            "special_points_checked": snc.special_points_checked,
        }),
    ));

    out.push(entry(
        "cover_model",
        json!({ "order": cover.order, "cyclic": cover.cyclic, "branch": log::divisor(&cover.branch) }),
    ));
    let data = branch_data(&cover, &input.branching_overrides)?;
    for d in &data {
        out.push(entry(
            "crossing",
            json!({
                "crossing": d.crossing,
                "conjugates": d.conjugates,
                "datum": serde_json::to_value(d.datum).expect("datum serializes"),
                "overridden": d.overridden,
            }),
        ));
    }
    let (manifest, cert) = assemble_resolution(&smooth, &data)?;
    for (i, c) in manifest.chains.iter().enumerate() {
        let mut v = serde_json::to_value(c).expect("chain serializes");
        v["id"] = json!(i);
        out.push(entry("fan_subdivision", v));
    }
    out.push(entry(
        "manifest",
        json!({ "modifications": manifest.modifications, "components": manifest.components }),
    ));
    out.push(entry(
        "result",
        json!({
            "status": "pass",
            "certificates": {
                "distinctness": trace.certificate.len(),
                "snc_fibers": cert.snc.fibers,
                "snc_special_points": cert.snc.special_points_checked,
                "chains": cert.chains_checked,
                "unimodular_cones": cert.cones_checked,
            },
        }),
    ));
    Ok(())
}

fn projection_entry(pc: &ProjectedCover) -> Entry {
    entry(
        "projection",
        json!({
            "center_q": pc.center_q,
            "draws": pc.draws,
            "f_at_q": log::rational(&pc.f_at_q),
            "g": log::poly(&pc.g),
            "disc": log::poly(&pc.disc),
            "delta": log::poly(&pc.delta),
            "degree_k": pc.degree_k,
        }),
    )
}

fn base_entry(b: &BaseChoice) -> Entry {
    entry(
        "base_point",
        json!({
            "o": b.o,
            "draws": b.draws,
            "delta_at_o": log::rational(&b.delta_at_o),
            "fiber_over_o": log::upoly(&b.fiber_over_o, "w"),
            "fiber_disc": log::rational(&b.fiber_disc),
            "line_checks": b.line_checks.iter().map(|l| json!({
                "direction": l.direction,
                "restricted_disc": log::poly(&l.restricted_disc),
            })).collect::<Vec<_>>(),
            "irreducible_witness": { "direction": b.irreducible_witness.0, "parameter": b.irreducible_witness.1 },
            "warning": b.warning,
        }),
    )
}

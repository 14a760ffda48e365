use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::algebra::parse::parse_poly;
use crate::projection::{HypersurfaceInput, SPACE_VARS};
use crate::ruled::{BinaryForm, HorizontalDivisor, LabeledSection, Section, SectionList};
use crate::toric::BranchingOverride;

/// Contents of an input file (TOML or JSON).
///
/// Mode A: `F`, `D`. Mode B: `twist_e`, `phis`, `marked_sections`. Both accept `seed`,
/// `degree_cap`, `cover_order` and `branching_overrides`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(rename = "D", default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_e: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked_sections: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branching_overrides: Vec<BranchingOverride>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_order: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Hypersurface F = 0 in P^3 with D in the hyperplane w = 0.
    Hypersurface,
    /// Horizontal divisor on a ruled surface with marked sections.
    Fibered,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Hypersurface => "A",
            Mode::Fibered => "B",
        }
    }
}

impl InputFile {
    pub fn from_str_auto(text: &str, hint: Option<&str>) -> Result<Self, PipelineError> {
        let json = match hint {
            Some("json") => true,
            Some("toml") => false,
            _ => text.trim_start().starts_with('{'),
        };
        if json {
            serde_json::from_str(text).map_err(|e| PipelineError::input(format!("malformed JSON: {e}")))
        } else {
            toml::from_str(text).map_err(|e| PipelineError::input(format!("malformed TOML: {e}")))
        }
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str_auto(&text, path.extension().and_then(|e| e.to_str()))
    }

    pub fn mode(&self) -> Result<Mode, PipelineError> {
        match (&self.f, self.twist_e) {
            (Some(_), None) if self.phis.is_empty() && self.marked_sections.is_empty() => Ok(Mode::Hypersurface),
            (None, Some(_)) if self.d.is_empty() => Ok(Mode::Fibered),
            (None, None) => Err(PipelineError::input("input needs either F or twist_e")),
            _ => Err(PipelineError::input("input mixes hypersurface and fibered keys")),
        }
    }

    pub fn hypersurface(&self) -> Result<HypersurfaceInput, PipelineError> {
        let f = self.f.as_deref().ok_or_else(|| PipelineError::input("F missing"))?;
        let parse = |s: &str| parse_poly(s, &SPACE_VARS).map_err(|e| PipelineError::input(format!("F or D: {e}")));
        let d = self.d.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(HypersurfaceInput::new(parse(f)?, d)?)
    }

    pub fn divisor(&self) -> Result<HorizontalDivisor, PipelineError> {
        let e = self.twist_e.ok_or_else(|| PipelineError::input("twist_e missing"))?;
        Ok(HorizontalDivisor::parse(e, &self.phis)?)
    }

    /// Marked sections "S0", "S1", ... in input order; "inf" is the infinity section.
    pub fn marked(&self) -> Result<SectionList, PipelineError> {
        let e = self.twist_e.ok_or_else(|| PipelineError::input("twist_e missing"))?;
        self.marked_sections
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let section = if s.trim() == "inf" { Section::Infinity } else { Section::Finite(BinaryForm::parse(s, e)?) };
                Ok(LabeledSection::new(format!("S{i}"), section))
            })
            .collect()
    }
}

/// Everything that influences a run besides the input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    pub degree_cap: u32,
    pub retry_cap: u32,
    pub extension_cap: usize,
    pub cover_order: u32,
    pub coord_bound: i64,
    pub sampled_lines: usize,
    pub irreducibility_trials: usize,
    pub translation_bound: i64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            degree_cap: 512,
            retry_cap: 32,
            extension_cap: 16,
            cover_order: 2,
            coord_bound: 3,
            sampled_lines: 3,
            irreducibility_trials: 8,
            translation_bound: 3,
        }
    }
}

impl PipelineConfig {
    /// Input-file values fill in what the command line did not set.
    pub fn resolve(input: &InputFile, seed: Option<u64>, degree_cap: Option<u32>) -> Result<Self, PipelineError> {
        let mut c = PipelineConfig::default();
        c.seed = seed.or(input.seed).unwrap_or(0);
        c.degree_cap = degree_cap.or(input.degree_cap).unwrap_or(c.degree_cap);
        c.cover_order = input.cover_order.unwrap_or(c.cover_order);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.degree_cap == 0 || self.retry_cap == 0 || self.extension_cap == 0 || self.cover_order < 2 {
            return Err(PipelineError::input("caps must be positive and cover_order at least 2"));
        }
        Ok(())
    }
}

//! Sweep configuration: defaults, flag/file merging, and the plain-text
//! `key = value` config format. Unknown keys are rejected, never ignored.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use unruh_core::measures::Measure;
use unruh_core::unruh::{CoeffConvention, CombinationMode};

pub const DEFAULT_A_MIN: f64 = 0.1;
pub const DEFAULT_A_MAX: f64 = 30.0;
pub const DEFAULT_A_STEPS: usize = 120;
pub const DEFAULT_OMEGA: f64 = 1.0;
pub const DEFAULT_EPS_TAIL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => bail!("unknown spacing '{other}' (expected linear or log)"),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<CombinationMode> {
    match s.replace('-', "_").as_str() {
        "uniform" => Ok(CombinationMode::Uniform),
        "trace_weighted" => Ok(CombinationMode::TraceWeighted),
        other => bail!("unknown combination mode '{other}' (expected uniform or trace-weighted)"),
    }
}

pub fn mode_label(m: CombinationMode) -> &'static str {
    match m {
        CombinationMode::Uniform => "uniform",
        CombinationMode::TraceWeighted => "trace_weighted",
    }
}

pub fn parse_convention(s: &str) -> Result<CoeffConvention> {
    match s.replace('-', "_").as_str() {
        "sqrt_n" => Ok(CoeffConvention::SqrtN),
        "linear_n" => Ok(CoeffConvention::LinearN),
        other => bail!("unknown coefficient convention '{other}' (expected sqrt-n or linear-n)"),
    }
}

pub fn convention_label(c: CoeffConvention) -> &'static str {
    match c {
        CoeffConvention::SqrtN => "sqrt_n",
        CoeffConvention::LinearN => "linear_n",
    }
}

/// A fully validated sweep request.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub measure: Measure,
    pub alpha_list: Vec<f64>,
    pub a_min: f64,
    pub a_max: f64,
    pub a_steps: usize,
    pub a_spacing: Spacing,
    pub omega: f64,
    pub eps_tail: f64,
    pub n_max_override: Option<usize>,
    pub mode: CombinationMode,
    pub convention: CoeffConvention,
    pub output_path: PathBuf,
}

/// Partially specified sweep, as read from a config file or from flags.
#[derive(Debug, Clone, Default)]
pub struct PartialSweep {
    pub measure: Option<Measure>,
    pub alpha_list: Option<Vec<f64>>,
    pub a_min: Option<f64>,
    pub a_max: Option<f64>,
    pub a_steps: Option<usize>,
    pub a_spacing: Option<Spacing>,
    pub omega: Option<f64>,
    pub eps_tail: Option<f64>,
    pub n_max_override: Option<usize>,
    pub mode: Option<CombinationMode>,
    pub convention: Option<CoeffConvention>,
    pub output_path: Option<PathBuf>,
}

impl PartialSweep {
    /// Field-wise merge; `overrides` wins wherever it is set.
    pub fn merged_with(self, overrides: PartialSweep) -> PartialSweep {
        PartialSweep {
            measure: overrides.measure.or(self.measure),
            alpha_list: overrides.alpha_list.or(self.alpha_list),
            a_min: overrides.a_min.or(self.a_min),
            a_max: overrides.a_max.or(self.a_max),
            a_steps: overrides.a_steps.or(self.a_steps),
            a_spacing: overrides.a_spacing.or(self.a_spacing),
            omega: overrides.omega.or(self.omega),
            eps_tail: overrides.eps_tail.or(self.eps_tail),
            n_max_override: overrides.n_max_override.or(self.n_max_override),
            mode: overrides.mode.or(self.mode),
            convention: overrides.convention.or(self.convention),
            output_path: overrides.output_path.or(self.output_path),
        }
    }

    pub fn build(self) -> Result<SweepConfig> {
        let cfg = SweepConfig {
            measure: self.measure.ok_or_else(|| anyhow!("no measure given"))?,
            alpha_list: self
                .alpha_list
                .ok_or_else(|| anyhow!("no alpha list given"))?,
            a_min: self.a_min.unwrap_or(DEFAULT_A_MIN),
            a_max: self.a_max.unwrap_or(DEFAULT_A_MAX),
            a_steps: self.a_steps.unwrap_or(DEFAULT_A_STEPS),
            a_spacing: self.a_spacing.unwrap_or(Spacing::Log),
            omega: self.omega.unwrap_or(DEFAULT_OMEGA),
            eps_tail: self.eps_tail.unwrap_or(DEFAULT_EPS_TAIL),
            n_max_override: self.n_max_override,
            mode: self.mode.unwrap_or(CombinationMode::TraceWeighted),
            convention: self.convention.unwrap_or(CoeffConvention::SqrtN),
            output_path: self
                .output_path
                .ok_or_else(|| anyhow!("no output path given"))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_list.is_empty() {
            bail!("alpha list must not be empty");
        }
        for &alpha in &self.alpha_list {
            if !(0.0..=1.0).contains(&alpha) {
                bail!("alpha {alpha} lies outside [0, 1]");
            }
        }
        if self.a_min <= 0.0 || !self.a_min.is_finite() {
            bail!("a_min must be positive and finite, got {}", self.a_min);
        }
        if self.a_min >= self.a_max || !self.a_max.is_finite() {
            bail!(
                "acceleration range must satisfy 0 < a_min < a_max < inf, got [{}, {}]",
                self.a_min,
                self.a_max
            );
        }
        if self.a_steps < 2 {
            bail!("a_steps must be at least 2, got {}", self.a_steps);
        }
        if self.omega <= 0.0 || !self.omega.is_finite() {
            bail!("omega must be positive and finite, got {}", self.omega);
        }
        if self.eps_tail <= 0.0 || self.eps_tail >= 1.0 || self.eps_tail.is_nan() {
            bail!("eps_tail must lie in (0, 1), got {}", self.eps_tail);
        }
        Ok(())
    }
}

pub fn parse_alpha_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .with_context(|| format!("bad alpha value '{}'", part.trim()))
        })
        .collect()
}

/// Parses the plain-text config format: one `key = value` per line, `#`
/// starts a comment, blank lines ignored, unknown keys rejected.
pub fn parse_config_text(text: &str) -> Result<PartialSweep> {
    let mut out = PartialSweep::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected 'key = value', got '{line}'", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let ctx = || format!("line {}: bad value for '{key}'", lineno + 1);
        match key {
            "measure" => out.measure = Some(value.parse().map_err(|e| anyhow!("{e}"))?),
            "alpha_list" => out.alpha_list = Some(parse_alpha_list(value)?),
            "a_min" => out.a_min = Some(value.parse().with_context(ctx)?),
            "a_max" => out.a_max = Some(value.parse().with_context(ctx)?),
            "a_steps" => out.a_steps = Some(value.parse().with_context(ctx)?),
            "a_spacing" => out.a_spacing = Some(value.parse()?),
            "omega" => out.omega = Some(value.parse().with_context(ctx)?),
            "eps_tail" => out.eps_tail = Some(value.parse().with_context(ctx)?),
            "n_max" => out.n_max_override = Some(value.parse().with_context(ctx)?),
            "mode" => out.mode = Some(parse_mode(value)?),
            "convention" => out.convention = Some(parse_convention(value)?),
            "output" => out.output_path = Some(PathBuf::from(value)),
            other => bail!("line {}: unknown config key '{other}'", lineno + 1),
        }
    }
    Ok(out)
}

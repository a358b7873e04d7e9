//! Experiment runner: config in, error tables and gridded fields out.
//!
//! A run samples the source, synthesizes noiseless data, and then for each
//! configured noise level perturbs the data (seed `base + index`), estimates
//! `delta`, chooses `mu`, and inverts with and without regularization.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::metrics::{error_report, hp_norm, ErrorReport, ReportContext};
use crate::model::{synthesize_observation, ModelParams};
use crate::noise::{add_noise, estimate_noise_level, NoiseSpec};
use crate::regularize::{
    bound_m, choose_mu, holder_bound, regularized_invert, theoretical_bound_from_parts,
    unregularized_invert, BoundParts, ChoiceRule, RegConfig,
};
use crate::sources::{sample_source, SourceId};
use crate::spectral::RealField;

/// `delta_M` used by the max-noise rule when the config leaves it out,
/// relative to the largest estimated noise level of the run.
pub const AUTO_DELTA_MAX_FACTOR: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub source: SourceConfig,
    /// Defaults to the source's own parameters.
    #[serde(default)]
    pub model: Option<ModelParams>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    pub noise: NoiseConfig,
    #[serde(default)]
    pub reg: RegSection,
    #[serde(default)]
    pub output: OutputConfig,
    /// Directory that relative paths in the config are resolved against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

/// Either a built-in source id or a field file written by [`write_field`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    #[serde(default)]
    pub id: Option<SourceId>,
    #[serde(default)]
    pub field: Option<PathBuf>,
}

/// Missing entries fall back to the source's default grid.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub lower: Option<Vec<f64>>,
    #[serde(default)]
    pub upper: Option<Vec<f64>>,
    #[serde(default)]
    pub samples: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    pub epsilons: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleName {
    KnownC,
    PlainDelta,
    #[default]
    MaxNoise,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegSection {
    /// Defaults to the source's smoothness exponent.
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub rule: RuleName,
    /// Norm bound for `known-c`; defaults to the true source's `H^p` norm.
    #[serde(default)]
    pub c: Option<f64>,
    /// Maximum noise level for `max-noise`; defaults to
    /// [`AUTO_DELTA_MAX_FACTOR`] times the largest estimated `delta`.
    #[serde(default)]
    pub delta_max: Option<f64>,
    /// Fixed `mu`, bypassing the rule.
    #[serde(default)]
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOutput {
    /// Every field on the full grid.
    #[default]
    All,
    /// Only the 2D slices listed in `slices`.
    Slices,
    None,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub fields: FieldOutput,
    /// Slice planes such as `"z=0"`.
    #[serde(default)]
    pub slices: Vec<String>,
}

/// Command-line overrides applied on top of a config.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub resolution: Option<usize>,
    pub mu: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut config = Self::from_toml(&text)?;
        config.base_dir = path.parent().map(Path::to_path_buf);
        Ok(config)
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.noise.seed = seed;
        }
        if let Some(out) = &overrides.out {
            self.output.dir = Some(out.clone());
        }
        if let Some(n) = overrides.resolution {
            let grid = self.grid.get_or_insert_with(GridConfig::default);
            let dim = self.source.id.map_or(0, SourceId::dim);
            let dim = grid.samples.as_ref().map_or(dim, Vec::len);
            grid.samples = Some(vec![n; dim]);
        }
        if let Some(mu) = overrides.mu {
            self.reg.mu = Some(mu);
        }
    }

    fn resolve_path(&self, path: &Path) -> PathBuf {
        match &self.base_dir {
            Some(base) if path.is_relative() => base.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// Output directory, if any.
    pub fn output_dir(&self) -> Option<PathBuf> {
        self.output.dir.clone()
    }

    fn truth(&self) -> Result<(RealField, ModelParams, f64)> {
        match (&self.source.id, &self.source.field) {
            (Some(id), None) => {
                let (default_params, default_p) = id.default_params();
                let spec = self.grid_for(*id)?;
                let params = self.model.clone().unwrap_or(default_params);
                Ok((
                    sample_source(*id, &spec)?,
                    params,
                    self.reg.p.unwrap_or(default_p),
                ))
            }
            (None, Some(path)) => {
                if self.grid.is_some() {
                    return Err(Error::InvalidConfig(
                        "a field source carries its own grid; remove the grid section".into(),
                    ));
                }
                let field = read_field(&self.resolve_path(path))?;
                let params = self.model.clone().ok_or_else(|| {
                    Error::InvalidConfig("a field source needs a model section".into())
                })?;
                let p = self
                    .reg
                    .p
                    .ok_or_else(|| Error::InvalidConfig("a field source needs reg.p".into()))?;
                Ok((field, params, p))
            }
            _ => Err(Error::InvalidConfig(
                "source needs exactly one of `id` or `field`".into(),
            )),
        }
    }

    fn grid_for(&self, id: SourceId) -> Result<GridSpec> {
        let mut spec = id.default_grid();
        if let Some(grid) = &self.grid {
            if let Some(lower) = &grid.lower {
                spec.lower = lower.clone();
            }
            if let Some(upper) = &grid.upper {
                spec.upper = upper.clone();
            }
            if let Some(samples) = &grid.samples {
                spec.samples = samples.clone();
            }
        }
        spec.validate()?;
        if spec.dim() != id.dim() {
            return Err(Error::DimensionMismatch {
                expected: id.dim(),
                found: spec.dim(),
            });
        }
        Ok(spec)
    }
}

/// Fields and reports of one noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct RowArtifacts {
    pub report: ErrorReport,
    pub seed: u64,
    pub noisy: RealField,
    pub unregularized: RealField,
    pub regularized: RealField,
    /// Hölder-form bound, reported next to the rule's own bound for `known-c`.
    pub holder_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub name: String,
    pub params: ModelParams,
    /// Regularization config with every default filled in.
    pub reg: RegConfig,
    /// `H^p` norm of the true source.
    pub c_norm: f64,
    pub m: f64,
    pub truth: RealField,
    pub data: RealField,
    /// One row per noise level, in config order.
    pub rows: Vec<RowArtifacts>,
}

impl RunArtifacts {
    pub fn reports(&self) -> Vec<ErrorReport> {
        self.rows.iter().map(|r| r.report).collect()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(ErrorReport::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.report.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.reports()).unwrap_or_default();
        out.push('\n');
        out
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(out, "{}", self.name);
        let _ = writeln!(
            out,
            "alpha^2={} beta={:?} nu={} t0={} p={} rule={} M={:.4} |f|_Hp={:.4}",
            p.alpha2,
            p.beta,
            p.nu,
            p.t0,
            self.reg.p,
            rule_label(&self.reg),
            self.m,
            self.c_norm
        );
        let known_c = matches!(self.reg.rule, ChoiceRule::KnownC { .. });
        let _ = write!(
            out,
            "{:>10} {:>10} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12}",
            "epsilon", "delta", "mu", "|f-f_d|", "|f-f_dm|", "rel unreg", "rel reg", "bound"
        );
        if known_c {
            let _ = write!(out, " {:>12}", "holder bound");
        }
        out.push('\n');
        for row in &self.rows {
            let r = &row.report;
            let _ = write!(
                out,
                "{:>10.4} {:>10.4} {:>10.4} {:>12.4} {:>12.4} {:>12.4} {:>12.4} {:>12.4}",
                r.epsilon,
                r.delta,
                r.mu,
                r.abs_unreg,
                r.abs_reg,
                r.rel_unreg,
                r.rel_reg,
                r.theoretical_bound
            );
            if let Some(h) = row.holder_bound {
                let _ = write!(out, " {h:>12.4}");
            }
            out.push('\n');
        }
        out
    }
}

fn rule_label(reg: &RegConfig) -> String {
    let rule = match reg.rule {
        ChoiceRule::KnownC { c } => format!("known-c(C={c:.4})"),
        ChoiceRule::PlainDelta => "plain-delta".into(),
        ChoiceRule::MaxNoise { delta_max } => format!("max-noise(delta_M={delta_max:.4})"),
    };
    match reg.mu_override {
        Some(mu) => format!("{rule}, mu fixed at {mu}"),
        None => rule,
    }
}

/// Runs the whole pipeline. Noise levels are processed in parallel; every
/// row is deterministic given the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunArtifacts> {
    let (truth, params, p) = config.truth().map_err(|e| e.at("config"))?;
    params
        .validate_for(truth.spec.dim())
        .map_err(|e| e.at("config"))?;
    let epsilons = &config.noise.epsilons;
    if epsilons.is_empty() {
        return Err(Error::InvalidConfig("noise.epsilons is empty".into()).at("config"));
    }
    let name = config
        .name
        .clone()
        .unwrap_or_else(|| match config.source.id {
            Some(id) => id.name().to_string(),
            None => "custom".to_string(),
        });

    let data = synthesize_observation(&truth, &params).map_err(|e| e.at("synthesize"))?;
    let c_norm = hp_norm(&truth, p).map_err(|e| e.at("config"))?;

    let noisy: Vec<(u64, RealField, f64)> = epsilons
        .par_iter()
        .enumerate()
        .map(|(i, &epsilon)| {
            let seed = config.noise.seed.wrapping_add(i as u64);
            let spec = NoiseSpec::new(epsilon, seed).map_err(|e| e.at("noise"))?;
            let y_delta = add_noise(&data, spec).map_err(|e| e.at("noise"))?;
            let delta = estimate_noise_level(&data, &y_delta).map_err(|e| e.at("estimate"))?;
            Ok((seed, y_delta, delta))
        })
        .collect::<Result<_>>()?;

    let reg = resolve_reg(config, p, c_norm, &noisy).map_err(|e| e.at("config"))?;
    let m = bound_m(&params, truth.spec.dim());
    let parts = BoundParts {
        m,
        c_norm: match reg.rule {
            ChoiceRule::KnownC { c } => c,
            _ => c_norm,
        },
    };
    info!(
        "{name}: {} noise levels, rule {}",
        epsilons.len(),
        rule_label(&reg)
    );

    let rows = noisy
        .into_par_iter()
        .zip(epsilons.par_iter())
        .map(|((seed, y_delta, delta), &epsilon)| {
            let unregularized =
                unregularized_invert(&y_delta, &params).map_err(|e| e.at("invert"))?;
            let (mu, regularized) = if delta > 0.0 || reg.mu_override.is_some() {
                let mu = choose_mu(&reg, delta).map_err(|e| e.at("choose-mu"))?;
                let f = regularized_invert(&y_delta, &params, mu).map_err(|e| e.at("invert"))?;
                (mu, f)
            } else {
                // Noiseless data: the limit mu -> 0 is the exact inverse.
                (0.0, unregularized.clone())
            };
            let ctx = ReportContext {
                epsilon,
                delta,
                mu,
                theoretical_bound: theoretical_bound_from_parts(&reg, delta, parts),
            };
            let report = error_report(&truth, &unregularized, &regularized, ctx)
                .map_err(|e| e.at("report"))?;
            let holder = match reg.rule {
                ChoiceRule::KnownC { c } => Some(holder_bound(c + 2.0 * m, reg.p, delta)),
                _ => None,
            };
            Ok(RowArtifacts {
                report,
                seed,
                noisy: y_delta,
                unregularized,
                regularized,
                holder_bound: holder,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RunArtifacts {
        name,
        params,
        reg,
        c_norm,
        m,
        truth,
        data,
        rows,
    })
}

fn resolve_reg(
    config: &ExperimentConfig,
    p: f64,
    c_norm: f64,
    noisy: &[(u64, RealField, f64)],
) -> Result<RegConfig> {
    let section = &config.reg;
    if section.c.is_some() && section.rule != RuleName::KnownC {
        return Err(Error::InvalidConfig(
            "reg.c only applies to the known-c rule".into(),
        ));
    }
    if section.delta_max.is_some() && section.rule != RuleName::MaxNoise {
        return Err(Error::InvalidConfig(
            "reg.delta_max only applies to the max-noise rule".into(),
        ));
    }
    let rule = match section.rule {
        RuleName::KnownC => ChoiceRule::KnownC {
            c: section.c.unwrap_or(c_norm),
        },
        RuleName::PlainDelta => ChoiceRule::PlainDelta,
        RuleName::MaxNoise => {
            let delta_max = match section.delta_max {
                Some(d) => d,
                None => {
                    let largest = noisy.iter().map(|n| n.2).fold(0.0, f64::max);
                    if largest > 0.0 {
                        AUTO_DELTA_MAX_FACTOR * largest
                    } else {
                        // Every row is noiseless, so the rule is never consulted.
                        1.0
                    }
                }
            };
            ChoiceRule::MaxNoise { delta_max }
        }
    };
    RegConfig::new(p, rule)?.with_mu_override(section.mu)
}

/// Writes `errors.csv`, `errors.json`, `errors.txt` and the requested
/// fields into `dir`.
/// Returns the written paths in order.
pub fn write_artifacts(
    artifacts: &RunArtifacts,
    dir: &Path,
    fields: FieldOutput,
    slices: &[SliceFix],
) -> Result<Vec<PathBuf>> {
    let write = |path: PathBuf, text: &str| -> Result<PathBuf> {
        fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    };
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut written = vec![
        write(dir.join("errors.csv"), &artifacts.csv())?,
        write(dir.join("errors.json"), &artifacts.json())?,
        write(dir.join("errors.txt"), &artifacts.table())?,
    ];
    match fields {
        FieldOutput::None => {}
        FieldOutput::All => {
            for (name, field) in named_fields(artifacts) {
                written.push(write(
                    dir.join(format!("{name}.field")),
                    &format_field(&name, field),
                )?);
            }
        }
        FieldOutput::Slices => {
            for slice in emit_slices(artifacts, slices)? {
                written.push(write(
                    dir.join(format!("{}.field", slice.name)),
                    &format_field(&slice.name, &slice.field),
                )?);
            }
        }
    }
    Ok(written)
}

fn named_fields(artifacts: &RunArtifacts) -> Vec<(String, &RealField)> {
    let mut out = vec![
        ("truth".to_string(), &artifacts.truth),
        ("data".to_string(), &artifacts.data),
    ];
    for (i, row) in artifacts.rows.iter().enumerate() {
        out.push((format!("eps{i}_noisy"), &row.noisy));
        out.push((format!("eps{i}_unregularized"), &row.unregularized));
        out.push((format!("eps{i}_regularized"), &row.regularized));
    }
    out
}

/// A plane `x_axis = coord`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceFix {
    pub axis: usize,
    pub coord: f64,
}

impl SliceFix {
    /// Parses `x=0`, `y=-1.5`, `z=2` or `x3=2`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("bad slice `{text}`, expected e.g. `z=0`"));
        let (axis, coord) = text.split_once('=').ok_or_else(bad)?;
        let axis = match axis.trim() {
            "x" | "x1" => 0,
            "y" | "x2" => 1,
            "z" | "x3" => 2,
            _ => return Err(bad()),
        };
        let coord = coord.trim().parse::<f64>().map_err(|_| bad())?;
        Ok(SliceFix { axis, coord })
    }

    fn label(&self) -> &'static str {
        ["x", "y", "z"][self.axis]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedField {
    pub name: String,
    pub field: RealField,
}

/// Cuts every field of a 3D run at the nearest grid plane of each fix.
pub fn emit_slices(artifacts: &RunArtifacts, fixes: &[SliceFix]) -> Result<Vec<NamedField>> {
    let spec = &artifacts.truth.spec;
    if spec.dim() != 3 {
        return Err(Error::InvalidConfig(format!(
            "slices need a 3D run, this one is {}D",
            spec.dim()
        )));
    }
    let mut out = Vec::new();
    for fix in fixes {
        if fix.axis >= 3 {
            return Err(Error::InvalidConfig(format!("no axis {}", fix.axis)));
        }
        let (lower, upper) = (spec.lower[fix.axis], spec.upper[fix.axis]);
        if !(fix.coord >= lower && fix.coord <= upper) {
            return Err(Error::SliceOutOfBox {
                axis: fix.axis,
                coord: fix.coord,
                lower,
                upper,
            });
        }
        let n = spec.samples[fix.axis];
        let plane = ((fix.coord - lower) / spec.spacing(fix.axis) - 0.5)
            .round()
            .clamp(0.0, (n - 1) as f64) as usize;
        for (name, field) in named_fields(artifacts) {
            out.push(NamedField {
                name: format!("{name}_{}{}", fix.label(), fix.coord),
                field: slice_field(field, fix.axis, plane)?,
            });
        }
    }
    Ok(out)
}

fn slice_field(field: &RealField, axis: usize, plane: usize) -> Result<RealField> {
    let spec = &field.spec;
    let keep: Vec<usize> = (0..spec.dim()).filter(|&k| k != axis).collect();
    let sub = GridSpec::new(
        keep.iter().map(|&k| spec.lower[k]).collect(),
        keep.iter().map(|&k| spec.upper[k]).collect(),
        keep.iter().map(|&k| spec.samples[k]).collect(),
    )?;
    let strides = spec.strides();
    let mut idx = vec![0usize; sub.dim()];
    let values = (0..sub.len())
        .map(|flat| {
            sub.unravel(flat, &mut idx);
            let src: usize = keep
                .iter()
                .zip(&idx)
                .map(|(&k, &i)| i * strides[k])
                .sum::<usize>()
                + plane * strides[axis];
            field.values[src]
        })
        .collect();
    RealField::new(sub, values)
}

/// Self-describing text dump: one `axis k lower upper samples` line per
/// axis, then the values in row-major order, one per line.
pub fn format_field(name: &str, field: &RealField) -> String {
    let spec = &field.spec;
    let mut out = String::with_capacity(24 * field.len() + 128);
    let _ = writeln!(out, "# parasource field {name}");
    let _ = writeln!(out, "dim {}", spec.dim());
    for k in 0..spec.dim() {
        let _ = writeln!(
            out,
            "axis {k} {:e} {:e} {}",
            spec.lower[k], spec.upper[k], spec.samples[k]
        );
    }
    let _ = writeln!(out, "values {}", field.len());
    for v in &field.values {
        let _ = writeln!(out, "{v:e}");
    }
    out
}

pub fn parse_field(text: &str) -> Result<RealField> {
    let bad = |msg: &str| Error::InvalidConfig(format!("field file: {msg}"));
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut next_pair = |key: &str| -> Result<Vec<String>> {
        let line = lines
            .next()
            .ok_or_else(|| bad(&format!("missing `{key}`")))?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(bad(&format!("expected `{key}`, found `{line}`")));
        }
        Ok(parts.map(String::from).collect())
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| bad(&format!("bad number `{s}`")))
    };
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(&format!("bad count `{s}`")))
    };

    let dim = count(next_pair("dim")?.first().ok_or_else(|| bad("empty dim"))?)?;
    let (mut lower, mut upper, mut samples) = (vec![], vec![], vec![]);
    for k in 0..dim {
        let parts = next_pair("axis")?;
        if parts.len() != 4 || count(&parts[0])? != k {
            return Err(bad(&format!("malformed axis {k}")));
        }
        lower.push(num(&parts[1])?);
        upper.push(num(&parts[2])?);
        samples.push(count(&parts[3])?);
    }
    let spec = GridSpec::new(lower, upper, samples)?;
    let len = count(
        next_pair("values")?
            .first()
            .ok_or_else(|| bad("empty values"))?,
    )?;
    if len != spec.len() {
        return Err(bad(&format!(
            "{len} values declared, grid has {}",
            spec.len()
        )));
    }
    let values = lines.map(num).collect::<Result<Vec<_>>>()?;
    if values.len() != len {
        return Err(bad(&format!(
            "{len} values declared, found {}",
            values.len()
        )));
    }
    RealField::new(spec, values)
}

pub fn write_field(path: &Path, name: &str, field: &RealField) -> Result<()> {
    fs::write(path, format_field(name, field))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_field(path: &Path) -> Result<RealField> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_field(&text)
}

/// A benchmark example with its parameters as stated in the example text.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub example: usize,
    pub source: SourceId,
    pub params: ModelParams,
    pub p: f64,
}

impl Preset {
    pub fn summary(&self) -> String {
        let m = &self.params;
        let beta: Vec<String> = m.beta.iter().map(|b| format!("{b}")).collect();
        format!(
            "Example {} ({}): alpha^2={}, beta=({}), nu={}, t0={}, p={}",
            self.example,
            self.source,
            m.alpha2,
            beta.join(","),
            m.nu,
            m.t0,
            self.p
        )
    }

    /// Shipped config for a variant: `table`, `figure` or `caption`.
    pub fn config_text(&self, variant: &str) -> Result<&'static str> {
        preset_text(&format!("example{}-{variant}", self.example))
    }
}

pub const PRESET_VARIANTS: [&str; 3] = ["table", "figure", "caption"];

pub fn list_presets() -> Vec<Preset> {
    SourceId::ALL
        .iter()
        .enumerate()
        .map(|(i, &source)| {
            let (params, p) = source.default_params();
            Preset {
                example: i + 1,
                source,
                params,
                p,
            }
        })
        .collect()
}

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        const PRESET_FILES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../presets/", $name, ".toml")))),*
        ];
    };
}

presets!(
    "example1-table",
    "example1-figure",
    "example1-caption",
    "example2-table",
    "example2-figure",
    "example2-caption",
    "example3-table",
    "example3-figure",
    "example3-caption",
    "example4-table",
    "example4-figure",
    "example4-caption",
    "example5-table",
    "example5-figure",
    "example5-caption",
);

/// Names of every shipped preset config.
pub fn preset_names() -> Vec<&'static str> {
    PRESET_FILES.iter().map(|(n, _)| *n).collect()
}

pub fn preset_text(name: &str) -> Result<&'static str> {
    PRESET_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown preset `{name}`")))
}

pub fn preset_config(name: &str) -> Result<ExperimentConfig> {
    ExperimentConfig::from_toml(preset_text(name)?)
}

//! Scenario documents.
//!
//! A scenario is a TOML file with top-level link parameters and two optional
//! sections, `[sweep]` and `[grid]`:
//!
//! ```toml
//! schema_version = 1
//! band_preset = "n260"      # n260 (39 GHz) | n261 (28 GHz) | custom
//! # carrier_hz = 39e9       # required for custom; must match a preset
//! n_antennas = 64
//! # dbar = 0.5             # spacing in carrier wavelengths
//! # theta_deg = 60.0        # incidence angle for band-map
//! # theta_worst_deg = 60.0  # worst-case angle for bmax-curve
//! tau_db = -1.0
//!
//! [sweep]                   # optional primary axis override
//! axis = "f_hz"             # gamma1 | gamma2 | tau_db | f_hz
//! min = -2e9
//! max = 2e9
//! points = 201
//! scale = "linear"          # linear | log
//! ```
//!
//! Unknown keys are rejected. See the README for the `[grid]` keys.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version written to and required from scenario files.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors from reading or validating a scenario.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    /// The document is not valid TOML or does not match the schema.
    #[error("scenario syntax: {0}")]
    Syntax(String),
    /// A key has an invalid value or is missing.
    #[error("scenario key `{key}`: {message}")]
    Invalid {
        /// Dotted key path.
        key: String,
        /// What is wrong with it.
        message: String,
    },
    /// A `--set` override could not be applied.
    #[error("override `{0}`: expected key=value")]
    Override(String),
}

fn invalid(key: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid {
        key: key.to_string(),
        message: message.into(),
    }
}

/// 5G NR band presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandPreset {
    /// n260, 39 GHz carrier.
    N260,
    /// n261, 28 GHz carrier.
    N261,
    /// Carrier given explicitly.
    Custom,
}

impl BandPreset {
    /// Carrier fixed by the preset, if any.
    pub fn carrier_hz(self) -> Option<f64> {
        match self {
            BandPreset::N260 => Some(39e9),
            BandPreset::N261 => Some(28e9),
            BandPreset::Custom => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            BandPreset::N260 => "n260",
            BandPreset::N261 => "n261",
            BandPreset::Custom => "custom",
        }
    }
}

/// Axis a `[sweep]` section applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Wideband coordinate.
    Gamma1,
    /// Near-field coordinate.
    Gamma2,
    /// Gain threshold.
    TauDb,
    /// Baseband frequency offset.
    FHz,
}

/// Grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Evenly spaced values.
    #[default]
    Linear,
    /// Evenly spaced logarithms.
    Log,
}

/// A 1-D sampling of one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    /// Which quantity is swept.
    pub axis: SweepAxis,
    /// First value.
    pub min: f64,
    /// Last value.
    pub max: f64,
    /// Number of samples, at least 2.
    pub points: usize,
    /// Spacing.
    #[serde(default)]
    pub scale: Scale,
}

impl Sweep {
    /// Builds a linear sweep without validation.
    pub fn linear(axis: SweepAxis, min: f64, max: f64, points: usize) -> Self {
        Self {
            axis,
            min,
            max,
            points,
            scale: Scale::Linear,
        }
    }

    /// The sample values, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == n - 1 {
                    self.max
                } else {
                    let t = i as f64 / last;
                    match self.scale {
                        Scale::Linear => self.min + (self.max - self.min) * t,
                        Scale::Log => {
                            let (a, b) = (self.min.log10(), self.max.log10());
                            10f64.powf(a + (b - a) * t)
                        }
                    }
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(invalid("sweep.min", "bounds must be finite"));
        }
        if self.points < 2 {
            return Err(invalid("sweep.points", "need at least 2 points"));
        }
        if self.min >= self.max {
            return Err(invalid("sweep.max", "must be greater than sweep.min"));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(invalid("sweep.min", "log sweeps need a positive minimum"));
        }
        Ok(())
    }
}

/// Figure-specific grid settings. Every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Grid {
    /// Half-width of the `γ1` axis, `γ1 ∈ [−max, max]`.
    pub gamma1_max: f64,
    /// Upper end of the `γ2` axis, `γ2 ∈ (0, max]`.
    pub gamma2_max: f64,
    /// Samples per `γ` axis.
    pub gamma_points: usize,
    /// Fixed `γ1` values for gain-vs-`γ2` cuts.
    pub cut_gamma1: Vec<f64>,
    /// Fixed `γ2` values for gain-vs-`γ1` cuts.
    pub cut_gamma2: Vec<f64>,
    /// Thresholds for contours and band-map; empty means `[tau_db]`.
    pub tau_db_list: Vec<f64>,
    /// `(aperture_m, carrier_hz)` curves for bmax-curve.
    pub bmax_presets: Vec<[f64; 2]>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            gamma1_max: 3.0,
            gamma2_max: 3.0,
            gamma_points: 121,
            cut_gamma1: vec![0.0, 0.5, 1.0, 2.0],
            cut_gamma2: vec![0.25, 0.5, 1.0, 2.0],
            tau_db_list: Vec::new(),
            bmax_presets: vec![[0.68, 28e9], [0.34, 28e9], [0.49, 39e9], [0.25, 39e9]],
        }
    }
}

/// How threshold inputs and gain outputs are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    /// `10·log10` of the amplitude gain.
    #[default]
    Db,
    /// Linear amplitude gain.
    Linear,
}

impl Units {
    /// Column name suffix.
    pub fn suffix(self) -> &'static str {
        match self {
            Units::Db => "db",
            Units::Linear => "linear",
        }
    }

    fn check_threshold(self, key: &str, v: f64) -> Result<(), ScenarioError> {
        // Whether a threshold admits a contour is decided by the commands.
        let ok = match self {
            Units::Db => v.is_finite(),
            Units::Linear => v.is_finite() && v > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(
                key,
                match self {
                    Units::Db => "threshold must be finite",
                    Units::Linear => "linear threshold must be positive",
                },
            ))
        }
    }

    /// Converts a threshold in these units to a linear gain.
    pub fn to_linear(self, v: f64) -> f64 {
        match self {
            Units::Db => 10f64.powf(v / 10.0),
            Units::Linear => v,
        }
    }

    /// Converts a linear gain to these units.
    pub fn from_linear(self, g: f64) -> f64 {
        match self {
            Units::Db => 10.0 * g.log10(),
            Units::Linear => g,
        }
    }
}

/// A validated scenario with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Band preset.
    pub band_preset: BandPreset,
    /// Carrier (Hz), fixed by the preset unless custom.
    pub carrier_hz: f64,
    /// Antenna count `N`.
    pub n_antennas: usize,
    /// Spacing in wavelengths `d̄`.
    pub dbar: f64,
    /// Incidence angle (degrees).
    pub theta_deg: f64,
    /// Worst-case incidence angle (degrees).
    pub theta_worst_deg: f64,
    /// Gain threshold, in the scenario's [`Units`].
    pub tau_db: f64,
    /// Optional primary-axis sweep.
    pub sweep: Option<Sweep>,
    /// Figure grid settings.
    pub grid: Grid,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema_version: u32,
    band_preset: BandPreset,
    #[serde(skip_serializing_if = "Option::is_none")]
    carrier_hz: Option<f64>,
    n_antennas: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    dbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_worst_deg: Option<f64>,
    tau_db: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<Sweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Grid>,
}

/// Parses and validates a scenario with thresholds in dB.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_with(text, &[], Units::Db)
}

/// Parses a scenario, applies `key=value` overrides and validates it.
///
/// Override keys are dotted paths (`grid.gamma1_max=4`); values are TOML
/// literals, falling back to a bare string (`band_preset=n261`).
pub fn parse_scenario_with(
    text: &str,
    overrides: &[String],
    units: Units,
) -> Result<Scenario, ScenarioError> {
    let mut table: toml::Table =
        toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.message().to_string()))?;
    for o in overrides {
        apply_override(&mut table, o)?;
    }
    let doc: Document = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| ScenarioError::Syntax(e.message().to_string()))?;
    Scenario::from_document(doc, units)
}

fn apply_override(table: &mut toml::Table, raw: &str) -> Result<(), ScenarioError> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| ScenarioError::Override(raw.to_string()))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(ScenarioError::Override(raw.to_string()));
    }
    let value = value.trim();
    let parsed = toml::from_str::<toml::Table>(&format!("v = {value}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(value.to_string()));

    let mut parts: Vec<&str> = key.split('.').collect();
    let leaf = parts.pop().expect("split yields at least one part");
    let mut cur = table;
    for p in parts {
        let entry = cur
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| invalid(key, format!("`{p}` is not a section")))?;
    }
    cur.insert(leaf.to_string(), parsed);
    Ok(())
}

impl Scenario {
    fn from_document(doc: Document, units: Units) -> Result<Self, ScenarioError> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version",
                format!(
                    "unsupported version {} (expected {SCHEMA_VERSION})",
                    doc.schema_version
                ),
            ));
        }
        let carrier_hz = match (doc.band_preset.carrier_hz(), doc.carrier_hz) {
            (Some(p), Some(c)) if p != c => {
                return Err(invalid(
                    "carrier_hz",
                    format!(
                        "{c} Hz conflicts with preset {} ({p} Hz)",
                        doc.band_preset.name()
                    ),
                ))
            }
            (Some(p), _) => p,
            (None, Some(c)) if c.is_finite() && c > 0.0 => c,
            (None, Some(c)) => {
                return Err(invalid("carrier_hz", format!("must be positive, got {c}")))
            }
            (None, None) => {
                return Err(invalid(
                    "carrier_hz",
                    "required when band_preset = \"custom\"",
                ))
            }
        };
        if doc.n_antennas == 0 {
            return Err(invalid("n_antennas", "must be at least 1"));
        }
        let dbar = doc.dbar.unwrap_or(0.5);
        if !(dbar.is_finite() && dbar > 0.0) {
            return Err(invalid("dbar", "must be positive"));
        }
        let theta_deg = doc.theta_deg.unwrap_or(60.0);
        if !(theta_deg.is_finite() && theta_deg.abs() < 90.0) {
            return Err(invalid("theta_deg", "must lie in (-90, 90)"));
        }
        let theta_worst_deg = doc.theta_worst_deg.unwrap_or(60.0);
        if !(theta_worst_deg.is_finite() && theta_worst_deg != 0.0 && theta_worst_deg.abs() <= 90.0)
        {
            return Err(invalid(
                "theta_worst_deg",
                "must be nonzero and within [-90, 90]",
            ));
        }
        units.check_threshold("tau_db", doc.tau_db)?;
        if let Some(s) = &doc.sweep {
            s.validate()?;
            if s.axis == SweepAxis::TauDb {
                units.check_threshold("sweep.min", s.min)?;
                units.check_threshold("sweep.max", s.max)?;
            }
            if s.axis == SweepAxis::Gamma2 && s.min < 0.0 {
                return Err(invalid("sweep.min", "gamma2 must be nonnegative"));
            }
        }
        let grid = doc.grid.unwrap_or_default();
        validate_grid(&grid, units)?;
        Ok(Self {
            band_preset: doc.band_preset,
            carrier_hz,
            n_antennas: doc.n_antennas,
            dbar,
            theta_deg,
            theta_worst_deg,
            tau_db: doc.tau_db,
            sweep: doc.sweep,
            grid,
        })
    }

    /// Serializes with every default written out.
    pub fn to_toml(&self) -> String {
        let doc = Document {
            schema_version: SCHEMA_VERSION,
            band_preset: self.band_preset,
            carrier_hz: Some(self.carrier_hz),
            n_antennas: self.n_antennas,
            dbar: Some(self.dbar),
            theta_deg: Some(self.theta_deg),
            theta_worst_deg: Some(self.theta_worst_deg),
            tau_db: self.tau_db,
            sweep: self.sweep.clone(),
            grid: Some(self.grid.clone()),
        };
        toml::to_string(&doc).expect("scenario documents always serialize")
    }

    /// The configured sweep if it is over `axis`.
    pub fn sweep_for(&self, axis: SweepAxis) -> Option<&Sweep> {
        self.sweep.as_ref().filter(|s| s.axis == axis)
    }

    /// Thresholds for contour and band-map runs.
    pub fn thresholds(&self) -> Vec<f64> {
        if self.grid.tau_db_list.is_empty() {
            vec![self.tau_db]
        } else {
            self.grid.tau_db_list.clone()
        }
    }
}

fn validate_grid(g: &Grid, units: Units) -> Result<(), ScenarioError> {
    if !(g.gamma1_max.is_finite() && g.gamma1_max > 0.0) {
        return Err(invalid("grid.gamma1_max", "must be positive"));
    }
    if !(g.gamma2_max.is_finite() && g.gamma2_max > 0.0) {
        return Err(invalid("grid.gamma2_max", "must be positive"));
    }
    if g.gamma_points < 2 {
        return Err(invalid("grid.gamma_points", "need at least 2 points"));
    }
    if g.cut_gamma1.iter().any(|v| !v.is_finite()) {
        return Err(invalid("grid.cut_gamma1", "values must be finite"));
    }
    if g.cut_gamma2.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(invalid("grid.cut_gamma2", "values must be positive"));
    }
    for &t in &g.tau_db_list {
        units.check_threshold("grid.tau_db_list", t)?;
    }
    for p in &g.bmax_presets {
        if !p.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(invalid(
                "grid.bmax_presets",
                "aperture and carrier must be positive",
            ));
        }
    }
    Ok(())
}

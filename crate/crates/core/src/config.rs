//! Run configuration: a strict TOML schema in human units.
//!
//! Every physical key carries its unit in the name (`length_mm`, `field_t`,
//! `linewidth_fwhm_ghz`, ...). Unknown keys are rejected. Values are
//! converted to SI exactly once, when the [`RunConfig`] is built.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::calibrate::FitOptions;
use crate::design::{AxisRange, DesignBounds, OptimizeOptions};
use crate::error::{Error, Result};
use crate::filter::{FilterConfig, HostCrystal};
use crate::sellmeier::SellmeierSet;
use crate::spectrum::{GridSpec, DEFAULT_POINTS, DEFAULT_SPAN_GHZ};
use crate::zeeman::{LineLabel, LineParams, LineStrengths, ZeemanConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub crystal: RawCrystal,
    pub transition: RawTransition,
    pub magnet: RawMagnet,
    pub lines: RawLines,
    #[serde(default)]
    pub grid: Option<RawGrid>,
    #[serde(default)]
    pub sweep: Option<RawSweep>,
    #[serde(default)]
    pub optimize: Option<RawOptimize>,
    #[serde(default)]
    pub calibrate: Option<RawCalibrate>,
    #[serde(default)]
    pub output: Option<RawOutput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCrystal {
    pub length_mm: f64,
    pub ordinary: RawSellmeier,
    pub extraordinary: RawSellmeier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSellmeier {
    pub a: f64,
    pub b_um2: f64,
    pub c_um2: f64,
    pub d_per_um2: f64,
    pub valid_min_um: f64,
    pub valid_max_um: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransition {
    pub wavelength_nm: f64,
    pub ground_splitting_ghz_per_t: f64,
    pub excited_splitting_ghz_per_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMagnet {
    pub field_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLines {
    pub a: RawLine,
    pub b: RawLine,
    pub c: RawLine,
    pub d: RawLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLine {
    pub absorption_per_cm: f64,
    pub linewidth_fwhm_ghz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub span_ghz: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub field_min_t: f64,
    pub field_max_t: f64,
    pub field_steps: usize,
    pub length_min_mm: f64,
    pub length_max_mm: f64,
    pub length_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOptimize {
    pub field_min_t: f64,
    pub field_max_t: f64,
    pub length_min_mm: f64,
    pub length_max_mm: f64,
    pub max_bandwidth_ghz: Option<f64>,
    pub coarse_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCalibrate {
    pub samples_path: Option<PathBuf>,
    pub fit_zeeman: Option<bool>,
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub field_t: AxisRange,
    pub length_mm: AxisRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeSpec {
    pub bounds: DesignBounds,
    pub options: OptimizeOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrateSpec {
    pub samples_path: Option<PathBuf>,
    pub options: FitOptions,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub raw: RawConfig,
    pub filter: FilterConfig,
    pub grid: GridSpec,
    pub sweep: Option<SweepSpec>,
    pub optimize: Option<OptimizeSpec>,
    pub calibrate: CalibrateSpec,
    pub output: Option<PathBuf>,
}

fn config_err(key: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(config_err(key, format!("must be positive, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(config_err(key, format!("must be non-negative, got {v}")))
    }
}

fn sellmeier(key: &str, raw: &RawSellmeier) -> Result<SellmeierSet> {
    SellmeierSet::new(
        raw.a,
        raw.b_um2,
        raw.c_um2,
        raw.d_per_um2,
        raw.valid_min_um,
        raw.valid_max_um,
    )
    .map_err(|e| config_err(key, e.to_string()))
}

fn axis(key: &str, min: f64, max: f64, steps: usize) -> Result<AxisRange> {
    AxisRange::new(min, max, steps).map_err(|_| {
        config_err(
            key,
            format!("malformed range: min {min}, max {max}, steps {steps}"),
        )
    })
}

impl RawConfig {
    fn line(&self, label: LineLabel) -> &RawLine {
        match label {
            LineLabel::A => &self.lines.a,
            LineLabel::B => &self.lines.b,
            LineLabel::C => &self.lines.c,
            LineLabel::D => &self.lines.d,
        }
    }

    fn filter(&self) -> Result<FilterConfig> {
        let length_mm = positive("crystal.length_mm", self.crystal.length_mm)?;
        let ordinary = sellmeier("crystal.ordinary", &self.crystal.ordinary)?;
        let extraordinary = sellmeier("crystal.extraordinary", &self.crystal.extraordinary)?;
        let crystal = HostCrystal::new(ordinary, extraordinary, length_mm)
            .map_err(|e| config_err("crystal", e.to_string()))?;

        let t = &self.transition;
        let wavelength_nm = positive("transition.wavelength_nm", t.wavelength_nm)?;
        let ground = non_negative("transition.ground_splitting_ghz_per_t", t.ground_splitting_ghz_per_t)?;
        let excited = non_negative("transition.excited_splitting_ghz_per_t", t.excited_splitting_ghz_per_t)?;
        let field = non_negative("magnet.field_t", self.magnet.field_t)?;
        let zeeman = ZeemanConfig::from_wavelength_nm(wavelength_nm, ground, excited, field)
            .map_err(|e| config_err("transition", e.to_string()))?;

        let mut lines = [LineParams {
            absorption: 0.0,
            half_width: 1.0,
        }; 4];
        for label in LineLabel::ALL {
            let raw = self.line(label);
            let alpha = non_negative(&format!("lines.{label}.absorption_per_cm"), raw.absorption_per_cm)?;
            let fwhm = positive(&format!("lines.{label}.linewidth_fwhm_ghz"), raw.linewidth_fwhm_ghz)?;
            lines[label.index()] = LineParams::from_human(alpha, fwhm);
        }
        let strengths = LineStrengths::new(lines).map_err(|e| config_err("lines", e.to_string()))?;

        FilterConfig::new(crystal, zeeman, strengths).map_err(|e| match e {
            Error::WavelengthOutOfRange { .. } => config_err("transition.wavelength_nm", e.to_string()),
            other => config_err("config", other.to_string()),
        })
    }

    pub fn build(self) -> Result<RunConfig> {
        let filter = self.filter()?;

        let grid = match &self.grid {
            Some(g) => GridSpec {
                span_ghz: g.span_ghz.unwrap_or(DEFAULT_SPAN_GHZ),
                points: g.points.unwrap_or(DEFAULT_POINTS),
            },
            None => GridSpec::default(),
        };
        grid.validate().map_err(|e| config_err("grid", e.to_string()))?;

        let sweep = match &self.sweep {
            Some(s) => {
                let field_t = axis("sweep.field", s.field_min_t, s.field_max_t, s.field_steps)?;
                let length_mm = axis("sweep.length", s.length_min_mm, s.length_max_mm, s.length_steps)?;
                non_negative("sweep.field_min_t", s.field_min_t)?;
                positive("sweep.length_min_mm", s.length_min_mm)?;
                Some(SweepSpec { field_t, length_mm })
            }
            None => None,
        };

        let optimize = match &self.optimize {
            Some(o) => {
                let bounds = DesignBounds {
                    field_min_t: o.field_min_t,
                    field_max_t: o.field_max_t,
                    length_min_mm: o.length_min_mm,
                    length_max_mm: o.length_max_mm,
                };
                bounds.validate().map_err(|e| config_err("optimize", e.to_string()))?;
                let mut options = OptimizeOptions::default();
                if let Some(beta) = o.max_bandwidth_ghz {
                    options.max_bandwidth_ghz = Some(positive("optimize.max_bandwidth_ghz", beta)?);
                }
                if let Some(steps) = o.coarse_steps {
                    if steps == 0 {
                        return Err(config_err("optimize.coarse_steps", "must be at least 1"));
                    }
                    options.coarse_steps = steps;
                }
                Some(OptimizeSpec { bounds, options })
            }
            None => None,
        };

        let mut fit = FitOptions::default();
        let mut samples_path = None;
        if let Some(c) = &self.calibrate {
            fit.fit_zeeman = c.fit_zeeman.unwrap_or(false);
            if let Some(n) = c.max_iterations {
                if n == 0 {
                    return Err(config_err("calibrate.max_iterations", "must be at least 1"));
                }
                fit.max_iterations = n;
            }
            samples_path = c.samples_path.clone();
        }

        let output = self.output.as_ref().and_then(|o| o.path.clone());
        Ok(RunConfig {
            filter,
            grid,
            sweep,
            optimize,
            calibrate: CalibrateSpec {
                samples_path,
                options: fit,
            },
            output,
            raw: self,
        })
    }
}

/// Parses and validates a config document.
pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let de = toml::Deserializer::parse(text).map_err(|e| config_err("<document>", e.message().to_string()))?;
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let key = if path == "." { "<document>".to_string() } else { path };
        config_err(key, e.into_inner().message().to_string())
    })?;
    raw.build()
}

/// Reads and parses a config file. Relative paths inside the file are
/// resolved against the file's directory.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    let mut cfg = parse_config_str(&text)?;
    if let Some(dir) = path.parent() {
        if let Some(p) = cfg.calibrate.samples_path.as_mut() {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
    }
    Ok(cfg)
}

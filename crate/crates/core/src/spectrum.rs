//! Sampled filter spectra on a detuning grid referenced to line b.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::parallel::Workers;
use crate::physics::absorption_depth;
use crate::transfer::{rotation_angle, transmission_from_wavenumbers};
use crate::units;

pub const DEFAULT_SPAN_GHZ: f64 = 60.0;
pub const DEFAULT_POINTS: usize = 8192;

/// Symmetric detuning grid `[-span, +span]` GHz around line b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub span_ghz: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            span_ghz: DEFAULT_SPAN_GHZ,
            points: DEFAULT_POINTS,
        }
    }
}

impl GridSpec {
    pub fn new(span_ghz: f64, points: usize) -> Result<Self> {
        let g = GridSpec { span_ghz, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.span_ghz.is_finite() && self.span_ghz > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "span must be positive and finite, got {}",
                self.span_ghz
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// Same span, `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        GridSpec {
            span_ghz: self.span_ghz,
            points: (self.points - 1) * factor.max(1) + 1,
        }
    }

    /// Detunings in GHz, strictly increasing.
    pub fn detunings_ghz(&self) -> Vec<f64> {
        let n = self.points;
        let step = 2.0 * self.span_ghz / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.span_ghz
                } else {
                    -self.span_ghz + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    /// `omega - omega_b` in GHz.
    pub detuning_ghz: f64,
    pub transmission: f64,
    /// Unwrapped rotation angle, rad.
    pub rotation: f64,
    pub depth_h: f64,
    pub depth_v: f64,
    /// Refractive index including the dopant dispersion.
    pub n_h: f64,
    pub n_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub points: Vec<SpectrumPoint>,
    pub config: FilterConfig,
}

impl Spectrum {
    pub fn detunings(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.detuning_ghz)
    }

    pub fn transmissions(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.transmission)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Evaluates every observable at one detuning from line b.
pub fn spectrum_point(config: &FilterConfig, detuning_ghz: f64) -> Result<SpectrumPoint> {
    let omega = config.reference_frequency() + units::ghz_to_angular(detuning_ghz);
    let response = config.response(omega)?;
    let (dk_h, dk_v) = response.differential_wavenumbers();
    let (k_h, k_v) = response.wavenumbers();
    let l = config.length();
    Ok(SpectrumPoint {
        detuning_ghz,
        transmission: transmission_from_wavenumbers(dk_h, dk_v, l),
        rotation: rotation_angle(dk_h, dk_v, l),
        depth_h: absorption_depth(k_h, l),
        depth_v: absorption_depth(k_v, l),
        n_h: response.n0_h * (1.0 + response.chi_h.re / 2.0),
        n_v: response.n0_v * (1.0 + response.chi_v.re / 2.0),
    })
}

/// Samples the filter on `grid`. Points are independent and assembled in
/// grid order, so the result is identical for every worker count.
pub fn spectrum(config: &FilterConfig, grid: &GridSpec, workers: Workers) -> Result<Spectrum> {
    grid.validate()?;
    let detunings = grid.detunings_ghz();
    let points = workers
        .map(&detunings, |&d| spectrum_point(config, d))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        points,
        config: config.clone(),
    })
}

use serde::{Deserialize, Serialize};

use super::{evaluate_design, FigureOfMerit};
use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::parallel::Workers;
use crate::spectrum::GridSpec;

/// Evenly spaced axis. A single step samples `min` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        let r = AxisRange { min, max, steps };
        r.validate("range")?;
        Ok(r)
    }

    pub fn fixed(value: f64) -> Self {
        AxisRange {
            min: value,
            max: value,
            steps: 1,
        }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::param(name, "bounds must be finite"));
        }
        if self.min > self.max {
            return Err(Error::param(
                name,
                format!("min {} exceeds max {}", self.min, self.max),
            ));
        }
        if self.steps == 0 {
            return Err(Error::param(name, "steps must be at least 1"));
        }
        Ok(())
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + self.span() * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub field_t: f64,
    pub length_mm: f64,
    pub fom: Option<FigureOfMerit>,
    /// Why `fom` is absent.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub field_t: AxisRange,
    pub length_mm: AxisRange,
    pub grid: GridSpec,
    /// Field-major lattice order.
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn cell(&self, field_index: usize, length_index: usize) -> &SweepCell {
        &self.cells[field_index * self.length_mm.steps + length_index]
    }
}

/// Figures of merit on the full (field, length) lattice. A cell whose
/// spectrum has no usable peak is recorded with its reason, not propagated.
pub fn sweep(
    template: &FilterConfig,
    field_t: AxisRange,
    length_mm: AxisRange,
    grid: &GridSpec,
    workers: Workers,
) -> Result<SweepResult> {
    field_t.validate("field_t")?;
    length_mm.validate("length_mm")?;
    if field_t.min < 0.0 {
        return Err(Error::param("field_t", "field must be non-negative"));
    }
    if length_mm.min <= 0.0 {
        return Err(Error::param("length_mm", "length must be positive"));
    }
    grid.validate()?;

    let lattice: Vec<(f64, f64)> = field_t
        .values()
        .into_iter()
        .flat_map(|b| length_mm.values().into_iter().map(move |l| (b, l)))
        .collect();
    let cells = workers.map(&lattice, |&(b, l)| {
        match evaluate_design(template, b, l, grid, Workers::single()) {
            Ok(fom) => SweepCell {
                field_t: b,
                length_mm: l,
                fom: Some(fom),
                error: None,
            },
            Err(e) => SweepCell {
                field_t: b,
                length_mm: l,
                fom: None,
                error: Some(e.to_string()),
            },
        }
    });
    Ok(SweepResult {
        field_t,
        length_mm,
        grid: *grid,
        cells,
    })
}

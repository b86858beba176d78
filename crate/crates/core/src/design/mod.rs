//! Figures of merit and searches over the (field, length) design space.

mod fom;
mod optimize;
mod sweep;
mod tradeoff;

pub use fom::{figures_of_merit, figures_of_merit_from, FigureOfMerit, NO_PEAK_FLOOR};
pub use optimize::{
    golden_section_max, optimize, optimize_with, DesignBounds, DesignSolution, OptimizeOptions,
};
pub use sweep::{sweep, AxisRange, SweepCell, SweepResult};
pub use tradeoff::{tradeoff_curve, TradeoffPoint};

use crate::error::Result;
use crate::filter::FilterConfig;
use crate::parallel::Workers;
use crate::spectrum::{spectrum, GridSpec};

/// Spectrum and figures of merit for `template` at one design point.
pub fn evaluate_design(
    template: &FilterConfig,
    field_t: f64,
    length_mm: f64,
    grid: &GridSpec,
    workers: Workers,
) -> Result<FigureOfMerit> {
    let config = template.with_field_and_length(field_t, length_mm)?;
    figures_of_merit(&spectrum(&config, grid, workers)?)
}

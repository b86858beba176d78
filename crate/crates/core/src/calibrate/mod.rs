//! Recovery of line strengths (and optionally splitting rates) from
//! measured absorption-depth spectra.

mod fit;
pub mod simplex;

pub use fit::{fit_lines, model_depth, AbsorptionSample, FitOptions, FitParameter, FitResult};

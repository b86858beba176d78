//! JSON documents written by the commands. Field names are part of the
//! output format.

use serde::Serialize;

use fadof_core::calibrate::{FitParameter, FitResult};
use fadof_core::design::{DesignSolution, FigureOfMerit};
use fadof_core::spectrum::GridSpec;
use fadof_core::LineLabel;

#[derive(Debug, Serialize)]
pub struct SpectrumSummary {
    pub field_t: f64,
    pub length_mm: f64,
    pub grid: GridSpec,
    pub figures_of_merit: Option<FigureOfMerit>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct OptimizeReport<'a> {
    pub status: &'static str,
    pub solution: &'a DesignSolution,
    pub grid: GridSpec,
}

#[derive(Debug, Serialize)]
pub struct LineReport {
    pub absorption_per_cm: f64,
    pub linewidth_fwhm_ghz: f64,
}

#[derive(Debug, Serialize)]
pub struct LinesReport {
    pub a: LineReport,
    pub b: LineReport,
    pub c: LineReport,
    pub d: LineReport,
}

#[derive(Debug, Serialize)]
pub struct SplittingReport {
    pub ground_splitting_ghz_per_t: f64,
    pub excited_splitting_ghz_per_t: f64,
    pub fitted: bool,
}

#[derive(Debug, Serialize)]
pub struct FitReport<'a> {
    pub converged: bool,
    pub iterations: usize,
    pub evaluations: usize,
    pub rms_residual: f64,
    pub samples: usize,
    pub lines: LinesReport,
    pub transition: SplittingReport,
    pub parameters: &'a [FitParameter],
}

impl<'a> FitReport<'a> {
    pub fn new(fit: &'a FitResult, samples: usize, fitted_zeeman: bool) -> Self {
        let line = |l: LineLabel| {
            let p = fit.strengths.get(l);
            LineReport {
                absorption_per_cm: p.absorption_per_cm(),
                linewidth_fwhm_ghz: p.linewidth_fwhm_ghz(),
            }
        };
        FitReport {
            converged: fit.converged,
            iterations: fit.iterations,
            evaluations: fit.evaluations,
            rms_residual: fit.rms_residual,
            samples,
            lines: LinesReport {
                a: line(LineLabel::A),
                b: line(LineLabel::B),
                c: line(LineLabel::C),
                d: line(LineLabel::D),
            },
            transition: SplittingReport {
                ground_splitting_ghz_per_t: fit.zeeman.ground_ghz_per_t,
                excited_splitting_ghz_per_t: fit.zeeman.excited_ghz_per_t,
                fitted: fitted_zeeman,
            },
            parameters: &fit.parameters,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub points: usize,
    pub max_abs_deviation: f64,
    pub at_detuning_ghz: f64,
    pub threshold: f64,
    pub pass: bool,
}

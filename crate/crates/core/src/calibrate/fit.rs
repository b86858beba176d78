use serde::{Deserialize, Serialize};

use super::simplex::{minimize, SimplexOptions};
use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::physics::absorption_depth;
use crate::units;
use crate::zeeman::{LineLabel, LineParams, LineStrengths, Polarization, ZeemanConfig};

/// One measured absorption depth, detuning relative to line b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionSample {
    pub detuning_ghz: f64,
    pub depth: f64,
    pub polarization: Polarization,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Also fit the ground and excited splitting rates.
    pub fit_zeeman: bool,
    pub max_iterations: usize,
    /// Relative residual tolerance for convergence.
    pub tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            fit_zeeman: false,
            max_iterations: 10_000,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitParameter {
    pub name: String,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub strengths: LineStrengths,
    pub zeeman: ZeemanConfig,
    pub rms_residual: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Config-facing values (cm^-1, GHz FWHM, GHz/T) before and after.
    pub parameters: Vec<FitParameter>,
    /// Best sum of squared residuals after each iteration.
    pub history: Vec<f64>,
}

/// Model absorption depth for `pol` at `detuning_ghz` from line b.
pub fn model_depth(config: &FilterConfig, pol: Polarization, detuning_ghz: f64) -> Result<f64> {
    let omega = config.reference_frequency() + units::ghz_to_angular(detuning_ghz);
    let (k_h, k_v) = config.response(omega)?.wavenumbers();
    let k = match pol {
        Polarization::H => k_h,
        Polarization::V => k_v,
    };
    Ok(absorption_depth(k, config.length()))
}

// Parameter vector layout: ln(alpha_a..d), ln(delta_a..d), [ln(gamma_g), ln(gamma_e)].
fn pack(strengths: &LineStrengths, zeeman: &ZeemanConfig, fit_zeeman: bool) -> Vec<f64> {
    let mut theta: Vec<f64> = LineLabel::ALL
        .iter()
        .map(|&l| strengths.get(l).absorption.ln())
        .chain(LineLabel::ALL.iter().map(|&l| strengths.get(l).half_width.ln()))
        .collect();
    if fit_zeeman {
        theta.push(zeeman.ground_ghz_per_t.ln());
        theta.push(zeeman.excited_ghz_per_t.ln());
    }
    theta
}

// exp() of anything in this range is a normal, positive f64
const LOG_LIMIT: f64 = 700.0;

fn positive_exp(x: f64) -> f64 {
    x.clamp(-LOG_LIMIT, LOG_LIMIT).exp()
}

fn unpack(theta: &[f64], zeeman: &ZeemanConfig) -> (LineStrengths, ZeemanConfig) {
    let lines = LineLabel::ALL.map(|l| LineParams {
        absorption: positive_exp(theta[l.index()]),
        half_width: positive_exp(theta[4 + l.index()]),
    });
    let zeeman = if theta.len() == 10 {
        ZeemanConfig {
            ground_ghz_per_t: positive_exp(theta[8]),
            excited_ghz_per_t: positive_exp(theta[9]),
            ..*zeeman
        }
    } else {
        *zeeman
    };
    (LineStrengths(lines), zeeman)
}

fn human_values(strengths: &LineStrengths, zeeman: &ZeemanConfig, fit_zeeman: bool) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = LineLabel::ALL
        .iter()
        .map(|&l| (format!("lines.{l}.absorption_per_cm"), strengths.get(l).absorption_per_cm()))
        .chain(
            LineLabel::ALL
                .iter()
                .map(|&l| (format!("lines.{l}.linewidth_fwhm_ghz"), strengths.get(l).linewidth_fwhm_ghz())),
        )
        .collect();
    if fit_zeeman {
        out.push(("transition.ground_splitting_ghz_per_t".into(), zeeman.ground_ghz_per_t));
        out.push(("transition.excited_splitting_ghz_per_t".into(), zeeman.excited_ghz_per_t));
    }
    out
}

fn validate_samples(samples: &[AbsorptionSample]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("no absorption samples".into()));
    }
    for pol in [Polarization::H, Polarization::V] {
        if !samples.iter().any(|s| s.polarization == pol) {
            return Err(Error::InsufficientData(format!(
                "no {pol}-polarized samples; both polarizations are required"
            )));
        }
    }
    for (i, s) in samples.iter().enumerate() {
        if !s.detuning_ghz.is_finite() {
            return Err(Error::param(format!("samples[{i}].detuning_ghz"), "must be finite"));
        }
        if !(s.depth.is_finite() && s.depth >= 0.0) {
            return Err(Error::param(format!("samples[{i}].depth"), "must be non-negative and finite"));
        }
    }
    Ok(())
}

/// Least-squares fit of the line strengths to measured depths, holding the
/// crystal (and, unless unlocked, the splitting rates) fixed at `fixed`.
///
/// Parameters are optimized in log space so every fitted value stays
/// strictly positive.
pub fn fit_lines(
    samples: &[AbsorptionSample],
    fixed: &FilterConfig,
    initial: &LineStrengths,
    options: &FitOptions,
) -> Result<FitResult> {
    validate_samples(samples)?;
    initial.validate()?;
    for label in LineLabel::ALL {
        if initial.get(label).absorption <= 0.0 {
            return Err(Error::param(
                format!("initial.lines.{label}.absorption"),
                "initial guess must be positive",
            ));
        }
    }
    let zeeman0 = fixed.zeeman;
    if options.fit_zeeman && !(zeeman0.ground_ghz_per_t > 0.0 && zeeman0.excited_ghz_per_t > 0.0) {
        return Err(Error::param(
            "transition",
            "splitting rates must be positive when they are fitted",
        ));
    }

    let sum_squares = |theta: &[f64]| -> f64 {
        let (strengths, zeeman) = unpack(theta, &zeeman0);
        let Ok(config) = FilterConfig::new(fixed.crystal, zeeman, strengths) else {
            return f64::INFINITY;
        };
        // fixed-order accumulation
        let mut total = 0.0;
        for s in samples {
            match model_depth(&config, s.polarization, s.detuning_ghz) {
                Ok(d) => total += (d - s.depth).powi(2),
                Err(_) => return f64::INFINITY,
            }
        }
        if total.is_finite() {
            total
        } else {
            f64::INFINITY
        }
    };

    let theta0 = pack(initial, &zeeman0, options.fit_zeeman);
    let start_ss = sum_squares(&theta0);
    if !start_ss.is_finite() {
        return Err(Error::Numeric("residual at the initial guess is not finite".into()));
    }
    let simplex_opts = SimplexOptions {
        max_iterations: options.max_iterations,
        tolerance: options.tolerance,
        ..Default::default()
    };
    let result = minimize(sum_squares, &theta0, &simplex_opts);
    if !result.f.is_finite() {
        return Err(Error::Numeric("residual became non-finite".into()));
    }

    let (strengths, zeeman) = unpack(&result.x, &zeeman0);
    strengths.validate()?;
    let parameters = human_values(initial, &zeeman0, options.fit_zeeman)
        .into_iter()
        .zip(human_values(&strengths, &zeeman, options.fit_zeeman))
        .map(|((name, start), (_, end))| FitParameter { name, start, end })
        .collect();
    Ok(FitResult {
        strengths,
        zeeman,
        rms_residual: (result.f / samples.len() as f64).sqrt(),
        iterations: result.iterations,
        evaluations: result.evaluations,
        converged: result.converged,
        parameters,
        history: result.history,
    })
}

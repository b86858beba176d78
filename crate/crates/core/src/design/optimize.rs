//! Deterministic (field, length) search: coarse lattice scan, then
//! coordinate-wise golden-section refinement around the best feasible cell.

use serde::{Deserialize, Serialize};

use super::{evaluate_design, AxisRange, FigureOfMerit};
use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::parallel::Workers;
use crate::spectrum::GridSpec;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignBounds {
    pub field_min_t: f64,
    pub field_max_t: f64,
    pub length_min_mm: f64,
    pub length_max_mm: f64,
}

impl DesignBounds {
    pub fn validate(&self) -> Result<()> {
        AxisRange::new(self.field_min_t, self.field_max_t, 1)
            .map_err(|_| Error::param("field bounds", "must be finite with min <= max"))?;
        AxisRange::new(self.length_min_mm, self.length_max_mm, 1)
            .map_err(|_| Error::param("length bounds", "must be finite with min <= max"))?;
        if self.field_min_t < 0.0 {
            return Err(Error::param("field bounds", "field must be non-negative"));
        }
        if self.length_min_mm <= 0.0 {
            return Err(Error::param("length bounds", "length must be positive"));
        }
        Ok(())
    }

    fn field_span(&self) -> f64 {
        self.field_max_t - self.field_min_t
    }

    fn length_span(&self) -> f64 {
        self.length_max_mm - self.length_min_mm
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOptions {
    /// Lattice points per axis in the coarse scan.
    pub coarse_steps: usize,
    /// Upper limit on the bandwidth, GHz; `None` leaves it unconstrained.
    pub max_bandwidth_ghz: Option<f64>,
    /// Refinement stops once both bracket widths fall below this fraction
    /// of their bound span.
    pub relative_tolerance: f64,
    /// Grid-density multiplier for the final verification spectrum.
    pub verify_factor: usize,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            coarse_steps: 32,
            max_bandwidth_ghz: None,
            relative_tolerance: 1e-4,
            verify_factor: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSolution {
    pub field_t: f64,
    pub length_mm: f64,
    /// Figures of merit from the verification evaluation.
    pub fom: Option<FigureOfMerit>,
    /// Peak transmission reached by the search.
    pub objective: f64,
    /// Best feasible objective of the coarse scan.
    pub coarse_objective: f64,
    pub max_bandwidth_ghz: Option<f64>,
    /// True only when the verification evaluation meets the constraint.
    pub bandwidth_constraint_satisfied: bool,
    pub evaluations: usize,
}

fn feasible(fom: &FigureOfMerit, max_bandwidth: Option<f64>) -> bool {
    max_bandwidth.is_none_or(|beta| fom.bandwidth_ghz <= beta)
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`. Returns the best point evaluated.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64, usize)
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evals = 2;
    let mut best = if fd > fc { (d, fd) } else { (c, fc) };
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            evals += 1;
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            evals += 1;
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    (best.0, best.1, evals)
}

/// Maximizes peak transmission over `bounds` for spectra sampled on `grid`.
pub fn optimize(
    template: &FilterConfig,
    bounds: &DesignBounds,
    options: &OptimizeOptions,
    grid: &GridSpec,
    workers: Workers,
) -> Result<DesignSolution> {
    grid.validate()?;
    let dense = grid.refined(options.verify_factor);
    optimize_with(
        |b, l| evaluate_design(template, b, l, grid, Workers::single()),
        |b, l| evaluate_design(template, b, l, &dense, workers),
        bounds,
        options,
        workers,
    )
}

/// Search driver over arbitrary evaluators. `search` scores candidates;
/// `verify` re-evaluates the final point (typically on a denser grid).
pub fn optimize_with<S, V>(
    search: S,
    verify: V,
    bounds: &DesignBounds,
    options: &OptimizeOptions,
    workers: Workers,
) -> Result<DesignSolution>
where
    S: Fn(f64, f64) -> Result<FigureOfMerit> + Sync + Send,
    V: Fn(f64, f64) -> Result<FigureOfMerit>,
{
    bounds.validate()?;
    if options.coarse_steps == 0 {
        return Err(Error::param("coarse_steps", "must be at least 1"));
    }
    if let Some(beta) = options.max_bandwidth_ghz {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::param("max_bandwidth_ghz", "must be positive and finite"));
        }
    }
    let beta = options.max_bandwidth_ghz;

    let axis = |min: f64, max: f64| {
        let steps = if max > min { options.coarse_steps.max(2) } else { 1 };
        AxisRange { min, max, steps }
    };
    let fields = axis(bounds.field_min_t, bounds.field_max_t);
    let lengths = axis(bounds.length_min_mm, bounds.length_max_mm);
    let lattice: Vec<(f64, f64)> = fields
        .values()
        .into_iter()
        .flat_map(|b| lengths.values().into_iter().map(move |l| (b, l)))
        .collect();
    let scores = workers.map(&lattice, |&(b, l)| search(b, l).ok());
    let mut evaluations = lattice.len();

    let mut best_feasible: Option<(f64, f64, f64)> = None;
    let mut best_any: Option<(f64, f64, f64)> = None;
    for (&(b, l), fom) in lattice.iter().zip(&scores) {
        let Some(fom) = fom else { continue };
        if best_any.is_none_or(|(_, _, t)| fom.t_max > t) {
            best_any = Some((b, l, fom.t_max));
        }
        if feasible(fom, beta) && best_feasible.is_none_or(|(_, _, t)| fom.t_max > t) {
            best_feasible = Some((b, l, fom.t_max));
        }
    }

    let Some((mut field, mut length, coarse_objective)) = best_feasible else {
        let (b, l, t) = best_any.unwrap_or((bounds.field_min_t, bounds.length_min_mm, f64::NAN));
        let fom = verify(b, l).ok();
        return Err(Error::Infeasible(Box::new(DesignSolution {
            field_t: b,
            length_mm: l,
            bandwidth_constraint_satisfied: false,
            fom,
            objective: t,
            coarse_objective: f64::NAN,
            max_bandwidth_ghz: beta,
            evaluations: evaluations + 1,
        })));
    };
    let mut objective = coarse_objective;

    let penalized = |b: f64, l: f64| match search(b, l) {
        Ok(fom) if feasible(&fom, beta) => fom.t_max,
        _ => f64::NEG_INFINITY,
    };

    let field_span = bounds.field_span();
    let length_span = bounds.length_span();
    let field_tol = options.relative_tolerance * field_span;
    let length_tol = options.relative_tolerance * length_span;
    let step = |span: f64, steps: usize| if steps > 1 { span / (steps - 1) as f64 } else { 0.0 };
    let mut field_half = step(field_span, fields.steps);
    let mut length_half = step(length_span, lengths.steps);

    while 2.0 * field_half > field_tol || 2.0 * length_half > length_tol {
        if field_span > 0.0 && 2.0 * field_half > field_tol {
            let lo = (field - field_half).max(bounds.field_min_t);
            let hi = (field + field_half).min(bounds.field_max_t);
            let (b, t, n) = golden_section_max(|b| penalized(b, length), lo, hi, field_tol);
            evaluations += n;
            if t > objective {
                field = b;
                objective = t;
            }
        }
        if length_span > 0.0 && 2.0 * length_half > length_tol {
            let lo = (length - length_half).max(bounds.length_min_mm);
            let hi = (length + length_half).min(bounds.length_max_mm);
            let (l, t, n) = golden_section_max(|l| penalized(field, l), lo, hi, length_tol);
            evaluations += n;
            if t > objective {
                length = l;
                objective = t;
            }
        }
        field_half *= 0.5;
        length_half *= 0.5;
    }

    let fom = verify(field, length).ok();
    evaluations += 1;
    let satisfied = fom.as_ref().is_some_and(|f| feasible(f, beta));
    Ok(DesignSolution {
        field_t: field,
        length_mm: length,
        fom,
        objective,
        coarse_objective,
        max_bandwidth_ghz: beta,
        bandwidth_constraint_satisfied: satisfied,
        evaluations,
    })
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Spectra whose peak transmission is below this are treated as dark.
pub const NO_PEAK_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureOfMerit {
    pub t_max: f64,
    /// Detunings of the local maxima, GHz, increasing.
    pub peak_detunings_ghz: Vec<f64>,
    /// Width between the outermost half-of-maximum crossings, GHz.
    pub bandwidth_ghz: f64,
    /// Equivalent-noise bandwidth, integral of T over T_max, GHz.
    pub enbw_ghz: f64,
    pub peak_count: usize,
}

pub fn figures_of_merit(s: &Spectrum) -> Result<FigureOfMerit> {
    let x: Vec<f64> = s.detunings().collect();
    let t: Vec<f64> = s.transmissions().collect();
    figures_of_merit_from(&x, &t)
}

/// Figures of merit for samples `t` on the strictly increasing grid `x`.
pub fn figures_of_merit_from(x: &[f64], t: &[f64]) -> Result<FigureOfMerit> {
    if x.len() != t.len() || x.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "need matching grids of at least 2 samples, got {} and {}",
            x.len(),
            t.len()
        )));
    }
    if t.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite transmission sample".into()));
    }
    let t_max = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if t_max < NO_PEAK_FLOOR {
        return Err(Error::NoPeak { t_max });
    }

    let half = t_max / 2.0;
    let n = t.len();
    let first = t.iter().position(|&v| v >= half).ok_or(Error::GridTooNarrow)?;
    let last = t.iter().rposition(|&v| v >= half).ok_or(Error::GridTooNarrow)?;
    if first == 0 || last == n - 1 {
        return Err(Error::GridTooNarrow);
    }
    let left = crossing(x[first - 1], t[first - 1], x[first], t[first], half);
    let right = crossing(x[last], t[last], x[last + 1], t[last + 1], half);

    let area: f64 = x
        .windows(2)
        .zip(t.windows(2))
        .map(|(xw, tw)| 0.5 * (xw[1] - xw[0]) * (tw[0] + tw[1]))
        .sum();

    let peaks = local_maxima(x, t);
    Ok(FigureOfMerit {
        t_max,
        peak_count: peaks.len(),
        peak_detunings_ghz: peaks,
        bandwidth_ghz: (right - left).max(0.0),
        enbw_ghz: (area / t_max).max(0.0),
    })
}

/// Linear interpolation for where the segment crosses `level`.
fn crossing(x0: f64, t0: f64, x1: f64, t1: f64, level: f64) -> f64 {
    if t1 == t0 {
        return x0;
    }
    x0 + (level - t0) * (x1 - x0) / (t1 - t0)
}

/// Strict three-point maxima; a run of equal samples higher than both of its
/// neighbours counts once, at the run midpoint. Grid endpoints never count.
fn local_maxima(x: &[f64], t: &[f64]) -> Vec<f64> {
    let n = t.len();
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        let mut end = i;
        while end + 1 < n && t[end + 1] == t[i] {
            end += 1;
        }
        if end + 1 < n && t[i] > t[i - 1] && t[end] > t[end + 1] {
            peaks.push(0.5 * (x[i] + x[end]));
        }
        i = end + 1;
    }
    peaks
}

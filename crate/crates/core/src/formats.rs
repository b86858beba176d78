//! CSV formats: spectrum output, sweep output, and absorption-sample input.
//!
//! Floats are written with 17 significant digits, which round-trips every
//! `f64` exactly.

use std::fmt::Write as _;

use crate::calibrate::AbsorptionSample;
use crate::design::SweepResult;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumPoint;
use crate::zeeman::Polarization;

pub const SPECTRUM_HEADER: &str = "detuning_ghz,transmission,rotation_rad,depth_h,depth_v,n_h,n_v";
pub const SWEEP_HEADER: &str =
    "field_t,length_mm,t_max,bandwidth_ghz,enbw_ghz,peak_count,peak_detunings_ghz,error";
pub const ABSORPTION_COLUMNS: [&str; 3] = ["detuning_ghz", "depth", "polarization"];

/// Full-precision float formatting.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_spectrum_csv(points: &[SpectrumPoint]) -> String {
    let mut out = String::with_capacity(points.len() * 180 + 64);
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for p in points {
        let fields = [p.detuning_ghz, p.transmission, p.rotation, p.depth_h, p.depth_v, p.n_h, p.n_v];
        let row: Vec<String> = fields.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses a spectrum CSV in the exact layout produced by [`write_spectrum_csv`].
pub fn parse_spectrum_csv(text: &str) -> Result<Vec<SpectrumPoint>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SPECTRUM_HEADER => {}
        Some(h) => return Err(Error::Parse(format!("unexpected spectrum header `{h}`"))),
        None => return Err(Error::Parse("empty spectrum file".into())),
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        let values = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line {row}: {e}")))?;
        if values.len() != 7 {
            return Err(Error::Parse(format!("line {row}: expected 7 fields, got {}", values.len())));
        }
        points.push(SpectrumPoint {
            detuning_ghz: values[0],
            transmission: values[1],
            rotation: values[2],
            depth_h: values[3],
            depth_v: values[4],
            n_h: values[5],
            n_v: values[6],
        });
    }
    Ok(points)
}

pub fn write_sweep_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for cell in &result.cells {
        let _ = write!(out, "{},{}", fmt_f64(cell.field_t), fmt_f64(cell.length_mm));
        match &cell.fom {
            Some(f) => {
                let peaks: Vec<String> = f.peak_detunings_ghz.iter().map(|&p| fmt_f64(p)).collect();
                let _ = write!(
                    out,
                    ",{},{},{},{},{},",
                    fmt_f64(f.t_max),
                    fmt_f64(f.bandwidth_ghz),
                    fmt_f64(f.enbw_ghz),
                    f.peak_count,
                    peaks.join(";")
                );
            }
            None => {
                let reason = cell.error.as_deref().unwrap_or("unknown").replace(['"', ','], " ");
                let _ = write!(out, ",,,,,,{reason}");
            }
        }
        out.push('\n');
    }
    out
}

/// Reads `detuning_ghz,depth,polarization` rows (any column order,
/// polarization `H` or `V`).
pub fn parse_absorption_csv(text: &str) -> Result<Vec<AbsorptionSample>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("missing column `{name}`")))
    };
    let (i_det, i_depth, i_pol) = (column("detuning_ghz")?, column("depth")?, column("polarization")?);
    if headers.len() != 3 {
        return Err(Error::Parse(format!(
            "expected columns {ABSORPTION_COLUMNS:?}, got {} columns",
            headers.len()
        )));
    }

    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| Error::Parse(format!("row {row}: {e}")))?;
        let field = |idx: usize| record.get(idx).unwrap_or("");
        let number = |idx: usize, name: &str| {
            field(idx)
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("row {row}: {name}: {e}")))
        };
        let detuning_ghz = number(i_det, "detuning_ghz")?;
        let depth = number(i_depth, "depth")?;
        let polarization = match field(i_pol) {
            "H" | "h" => Polarization::H,
            "V" | "v" => Polarization::V,
            other => {
                return Err(Error::Parse(format!(
                    "row {row}: polarization must be H or V, got `{other}`"
                )))
            }
        };
        if !detuning_ghz.is_finite() {
            return Err(Error::Parse(format!("row {row}: detuning must be finite")));
        }
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::Parse(format!("row {row}: depth must be non-negative")));
        }
        samples.push(AbsorptionSample {
            detuning_ghz,
            depth,
            polarization,
        });
    }
    Ok(samples)
}

pub fn write_absorption_csv(samples: &[AbsorptionSample]) -> String {
    let mut out = String::from("detuning_ghz,depth,polarization\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{}", fmt_f64(s.detuning_ghz), fmt_f64(s.depth), s.polarization);
    }
    out
}

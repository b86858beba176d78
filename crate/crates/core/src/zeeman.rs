//! Zeeman-split Z1 <-> R1 transition set.
//!
//! Both Kramers doublets split linearly in the field, giving four
//! transitions a, b, c, d. Lines b and c (the inner pair) are H-polarized,
//! lines a and d (the outer pair) are V-polarized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    /// Parallel to the doped crystal's c-axis.
    H,
    /// Perpendicular to the c-axis.
    V,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::H => "H",
            Polarization::V => "V",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineLabel {
    A,
    B,
    C,
    D,
}

impl LineLabel {
    pub const ALL: [LineLabel; 4] = [LineLabel::A, LineLabel::B, LineLabel::C, LineLabel::D];

    pub fn polarization(self) -> Polarization {
        match self {
            LineLabel::B | LineLabel::C => Polarization::H,
            LineLabel::A | LineLabel::D => Polarization::V,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LineLabel::A => "a",
            LineLabel::B => "b",
            LineLabel::C => "c",
            LineLabel::D => "d",
        }
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Zero-field line centre, splitting rates and applied field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeemanConfig {
    /// Zero-field transition angular frequency, rad/s.
    pub center: f64,
    pub ground_ghz_per_t: f64,
    pub excited_ghz_per_t: f64,
    pub field_t: f64,
}

impl ZeemanConfig {
    pub fn new(center: f64, ground_ghz_per_t: f64, excited_ghz_per_t: f64, field_t: f64) -> Result<Self> {
        let z = ZeemanConfig {
            center,
            ground_ghz_per_t,
            excited_ghz_per_t,
            field_t,
        };
        z.validate()?;
        Ok(z)
    }

    pub fn from_wavelength_nm(
        wavelength_nm: f64,
        ground_ghz_per_t: f64,
        excited_ghz_per_t: f64,
        field_t: f64,
    ) -> Result<Self> {
        if !(wavelength_nm.is_finite() && wavelength_nm > 0.0) {
            return Err(Error::param("wavelength_nm", "must be positive and finite"));
        }
        Self::new(
            units::wavelength_nm_to_angular(wavelength_nm),
            ground_ghz_per_t,
            excited_ghz_per_t,
            field_t,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.center.is_finite() && self.center > 0.0) {
            return Err(Error::param("center", "must be positive and finite"));
        }
        for (name, v) in [
            ("ground_ghz_per_t", self.ground_ghz_per_t),
            ("excited_ghz_per_t", self.excited_ghz_per_t),
            ("field_t", self.field_t),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::param(name, "must be non-negative and finite"));
            }
        }
        Ok(())
    }

    pub fn with_field(&self, field_t: f64) -> Self {
        ZeemanConfig { field_t, ..*self }
    }

    /// Ground-doublet splitting in rad/s.
    pub fn ground_splitting(&self) -> f64 {
        // rate first, field last: keeps the result exactly linear in B
        units::ghz_per_t_to_angular(self.ground_ghz_per_t) * self.field_t
    }

    /// Excited-doublet splitting in rad/s.
    pub fn excited_splitting(&self) -> f64 {
        units::ghz_per_t_to_angular(self.excited_ghz_per_t) * self.field_t
    }

    pub fn wavelength_um(&self) -> f64 {
        units::angular_to_wavelength_um(self.center)
    }
}

/// On-resonance absorption coefficient and half-width of one line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineParams {
    /// m^-1
    pub absorption: f64,
    /// HWHM, rad/s
    pub half_width: f64,
}

impl LineParams {
    pub fn from_human(absorption_per_cm: f64, linewidth_fwhm_ghz: f64) -> Self {
        LineParams {
            absorption: units::per_cm_to_per_m(absorption_per_cm),
            half_width: units::fwhm_ghz_to_half_width(linewidth_fwhm_ghz),
        }
    }

    pub fn absorption_per_cm(&self) -> f64 {
        units::per_m_to_per_cm(self.absorption)
    }

    pub fn linewidth_fwhm_ghz(&self) -> f64 {
        units::half_width_to_fwhm_ghz(self.half_width)
    }
}

/// Per-line strengths, indexed by [`LineLabel`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineStrengths(pub [LineParams; 4]);

impl LineStrengths {
    pub fn new(lines: [LineParams; 4]) -> Result<Self> {
        let s = LineStrengths(lines);
        s.validate()?;
        Ok(s)
    }

    /// Same absorption and width for every line.
    pub fn uniform(params: LineParams) -> Result<Self> {
        Self::new([params; 4])
    }

    pub fn validate(&self) -> Result<()> {
        for label in LineLabel::ALL {
            let p = self.get(label);
            if !(p.absorption.is_finite() && p.absorption >= 0.0) {
                return Err(Error::param(
                    format!("lines.{label}.absorption"),
                    "must be non-negative and finite",
                ));
            }
            if !(p.half_width.is_finite() && p.half_width > 0.0) {
                return Err(Error::param(
                    format!("lines.{label}.linewidth"),
                    "must be positive and finite",
                ));
            }
        }
        Ok(())
    }

    pub fn get(&self, label: LineLabel) -> LineParams {
        self.0[label.index()]
    }

    pub fn get_mut(&mut self, label: LineLabel) -> &mut LineParams {
        &mut self.0[label.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionLine {
    pub label: LineLabel,
    pub polarization: Polarization,
    /// Zero-field centre shared by all four lines, rad/s.
    pub center: f64,
    /// Zeeman shift from `center`, rad/s.
    pub offset: f64,
    /// m^-1
    pub absorption: f64,
    /// HWHM, rad/s
    pub half_width: f64,
}

impl TransitionLine {
    /// Resonance angular frequency.
    pub fn frequency(&self) -> f64 {
        self.center + self.offset
    }

    /// `omega - omega_q`, evaluated relative to the shared centre to keep the
    /// small Zeeman offset at full precision.
    #[inline]
    pub fn detuning(&self, omega: f64) -> f64 {
        (omega - self.center) - self.offset
    }
}

/// The four Zeeman components in label order a, b, c, d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionSet(pub [TransitionLine; 4]);

impl TransitionSet {
    pub fn iter(&self) -> impl Iterator<Item = &TransitionLine> {
        self.0.iter()
    }

    pub fn get(&self, label: LineLabel) -> &TransitionLine {
        &self.0[label.index()]
    }

    pub fn with_polarization(&self, pol: Polarization) -> impl Iterator<Item = &TransitionLine> {
        self.0.iter().filter(move |l| l.polarization == pol)
    }
}

/// Builds the four transitions. Detunings from the zero-field centre are
/// -(Dg+De)/2, -(Dg-De)/2, +(Dg-De)/2, +(Dg+De)/2 for a, b, c, d.
pub fn zeeman_transitions(z: &ZeemanConfig, s: &LineStrengths) -> TransitionSet {
    let dg = z.ground_splitting();
    let de = z.excited_splitting();
    let offsets = [-(dg + de) / 2.0, -(dg - de) / 2.0, (dg - de) / 2.0, (dg + de) / 2.0];
    let lines = LineLabel::ALL.map(|label| {
        let p = s.get(label);
        TransitionLine {
            label,
            polarization: label.polarization(),
            center: z.center,
            offset: offsets[label.index()],
            absorption: p.absorption,
            half_width: p.half_width,
        }
    });
    TransitionSet(lines)
}

//! Physical description of a filter and its per-frequency optical response.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physics::{host_wavenumber, susceptibility};
use crate::sellmeier::SellmeierSet;
use crate::units;
use crate::zeeman::{zeeman_transitions, LineStrengths, Polarization, TransitionSet, ZeemanConfig};

/// Uniaxial host crystal. H light sees the extraordinary index (c-axis),
/// V light the ordinary index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HostCrystal {
    pub ordinary: SellmeierSet,
    pub extraordinary: SellmeierSet,
    /// Doped-crystal length, m.
    pub length: f64,
}

impl HostCrystal {
    pub fn new(ordinary: SellmeierSet, extraordinary: SellmeierSet, length_mm: f64) -> Result<Self> {
        let c = HostCrystal {
            ordinary,
            extraordinary,
            length: units::mm_to_m(length_mm),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.ordinary.validate()?;
        self.extraordinary.validate()?;
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::param("length", "must be positive and finite"));
        }
        Ok(())
    }

    pub fn sellmeier(&self, pol: Polarization) -> &SellmeierSet {
        match pol {
            Polarization::H => &self.extraordinary,
            Polarization::V => &self.ordinary,
        }
    }

    pub fn index(&self, pol: Polarization, omega: f64) -> Result<f64> {
        self.sellmeier(pol).index(units::angular_to_wavelength_um(omega))
    }
}

/// Everything needed to evaluate the filter transfer function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub crystal: HostCrystal,
    pub zeeman: ZeemanConfig,
    pub strengths: LineStrengths,
    transitions: TransitionSet,
}

/// Host indices and susceptibilities at one angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumResponse {
    pub omega: f64,
    pub n0_h: f64,
    pub n0_v: f64,
    pub k0_h: f64,
    pub k0_v: f64,
    pub chi_h: Complex64,
    pub chi_v: Complex64,
}

impl MediumResponse {
    /// Full wavenumbers `k0 (1 + chi/2)` for H and V.
    pub fn wavenumbers(&self) -> (Complex64, Complex64) {
        (
            self.k0_h * (1.0 + self.chi_h / 2.0),
            self.k0_v * (1.0 + self.chi_v / 2.0),
        )
    }

    /// Dopant-only parts `k0 chi / 2`, which remain once the compensator has
    /// cancelled the host birefringent phase.
    pub fn differential_wavenumbers(&self) -> (Complex64, Complex64) {
        (self.k0_h * self.chi_h / 2.0, self.k0_v * self.chi_v / 2.0)
    }
}

impl FilterConfig {
    pub fn new(crystal: HostCrystal, zeeman: ZeemanConfig, strengths: LineStrengths) -> Result<Self> {
        crystal.validate()?;
        zeeman.validate()?;
        strengths.validate()?;
        let lambda = zeeman.wavelength_um();
        for pol in [Polarization::H, Polarization::V] {
            let set = crystal.sellmeier(pol);
            if !set.contains(lambda) {
                return Err(Error::WavelengthOutOfRange {
                    wavelength_um: lambda,
                    min_um: set.valid_min_um,
                    max_um: set.valid_max_um,
                });
            }
        }
        Ok(FilterConfig {
            crystal,
            zeeman,
            strengths,
            transitions: zeeman_transitions(&zeeman, &strengths),
        })
    }

    pub fn transitions(&self) -> &TransitionSet {
        &self.transitions
    }

    pub fn length(&self) -> f64 {
        self.crystal.length
    }

    /// Detuning reference: resonance of line b.
    pub fn reference_frequency(&self) -> f64 {
        self.transitions.get(crate::zeeman::LineLabel::B).frequency()
    }

    /// Copy with a different field and/or crystal length.
    pub fn with_field_and_length(&self, field_t: f64, length_mm: f64) -> Result<Self> {
        let crystal = HostCrystal::new(self.crystal.ordinary, self.crystal.extraordinary, length_mm)?;
        FilterConfig::new(crystal, self.zeeman.with_field(field_t), self.strengths)
    }

    pub fn with_strengths(&self, strengths: LineStrengths) -> Result<Self> {
        FilterConfig::new(self.crystal, self.zeeman, strengths)
    }

    pub fn with_zeeman(&self, zeeman: ZeemanConfig) -> Result<Self> {
        FilterConfig::new(self.crystal, zeeman, self.strengths)
    }

    pub fn response(&self, omega: f64) -> Result<MediumResponse> {
        let n0_h = self.crystal.index(Polarization::H, omega)?;
        let n0_v = self.crystal.index(Polarization::V, omega)?;
        let k0_h = host_wavenumber(omega, n0_h);
        let k0_v = host_wavenumber(omega, n0_v);
        Ok(MediumResponse {
            omega,
            n0_h,
            n0_v,
            k0_h,
            k0_v,
            chi_h: susceptibility(&self.transitions, Polarization::H, omega, k0_h),
            chi_v: susceptibility(&self.transitions, Polarization::V, omega, k0_v),
        })
    }
}

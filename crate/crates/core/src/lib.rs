//! Simulation and design tools for solid-state Faraday anomalous-dispersion
//! optical filters (FADOFs) built from rare-earth-doped birefringent crystals.
//!
//! The filter is a doped crystal followed by a matched undoped crystal with
//! its c-axis rotated by 90 degrees, between crossed polarizers, in an axial
//! magnetic field. The Zeeman-split Z1 <-> R1 lines give H and V light
//! different complex susceptibilities; the resulting differential phase
//! rotates the polarization and opens narrow transmission windows.
//!
//! Module map:
//! - [`sellmeier`], [`zeeman`], [`physics`], [`filter`]: host indices, line
//!   structure, susceptibility, wavenumbers and absorption depth.
//! - [`transfer`], [`jones`], [`spectrum`]: rotation, transmission, an
//!   independent Jones-matrix check, and sampled spectra.
//! - [`design`]: figures of merit, sweeps, trade-off curves, optimization.
//! - [`calibrate`]: fitting line strengths to measured absorption depths.
//! - [`config`], [`formats`]: run configuration and CSV formats.

pub mod calibrate;
pub mod config;
pub mod design;
pub mod error;
pub mod filter;
pub mod formats;
pub mod jones;
pub mod parallel;
pub mod physics;
pub mod sellmeier;
pub mod spectrum;
pub mod transfer;
pub mod units;
pub mod zeeman;

pub use error::{Error, Result};
pub use filter::{FilterConfig, HostCrystal};
pub use parallel::Workers;
pub use spectrum::{spectrum, GridSpec, Spectrum, SpectrumPoint};
pub use zeeman::{LineLabel, LineParams, LineStrengths, Polarization, ZeemanConfig};

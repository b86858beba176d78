#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fadof_core::config::{parse_config, RunConfig};
use fadof_core::filter::HostCrystal;
use fadof_core::sellmeier::{YVO4_EXTRAORDINARY, YVO4_ORDINARY};
use fadof_core::{FilterConfig, LineParams, LineStrengths, ZeemanConfig};

pub const WAVELENGTH_NM: f64 = 879.7;

pub fn shipped(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    parse_config(&path).unwrap()
}

pub fn yvo4(length_mm: f64) -> HostCrystal {
    HostCrystal::new(YVO4_ORDINARY, YVO4_EXTRAORDINARY, length_mm).unwrap()
}

pub fn config(
    length_mm: f64,
    field_t: f64,
    gg: f64,
    ge: f64,
    lines: [(f64, f64); 4],
) -> FilterConfig {
    let z = ZeemanConfig::from_wavelength_nm(WAVELENGTH_NM, gg, ge, field_t).unwrap();
    let s = LineStrengths::new(lines.map(|(a, f)| LineParams::from_human(a, f))).unwrap();
    FilterConfig::new(yvo4(length_mm), z, s).unwrap()
}

/// Random config with alpha * L <= `max_al` on every line and every
/// susceptibility bounded by 1e-3 (up to 140 cm^-1 in total).
pub fn random_config(rng: &mut ChaCha8Rng, max_al: f64) -> FilterConfig {
    let length_mm: f64 = rng.random_range(0.1..12.0);
    let field_t = rng.random_range(0.0..1.5);
    let gg = rng.random_range(0.0..25.0);
    let ge = rng.random_range(0.0..25.0);
    let max_alpha_cm = max_al / (length_mm * 0.1);
    let lines = std::array::from_fn(|_| {
        let a = rng.random_range(0.0..max_alpha_cm.min(35.0));
        let f = 10f64.powf(rng.random_range(-1.0..1.0));
        (a, f)
    });
    config(length_mm, field_t, gg, ge, lines)
}

/// Detuning from line b in GHz, clustered around the lines.
pub fn random_detuning(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.7) {
        rng.random_range(-30.0..30.0)
    } else {
        rng.random_range(-500.0..500.0)
    }
}

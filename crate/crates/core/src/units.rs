//! Conversions between the human-facing units used in configs and outputs
//! and the SI units used internally (rad/s, m, T).

use std::f64::consts::PI;

/// Speed of light in vacuum (CODATA, exact), m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

const TWO_PI_GHZ: f64 = 2.0 * PI * 1e9;

#[inline]
pub fn ghz_to_angular(f_ghz: f64) -> f64 {
    TWO_PI_GHZ * f_ghz
}

#[inline]
pub fn angular_to_ghz(omega: f64) -> f64 {
    omega / TWO_PI_GHZ
}

/// Angular frequency of light with the given vacuum wavelength.
#[inline]
pub fn wavelength_nm_to_angular(lambda_nm: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / (lambda_nm * 1e-9)
}

/// Vacuum wavelength in micrometres for an angular frequency.
#[inline]
pub fn angular_to_wavelength_um(omega: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / omega * 1e6
}

#[inline]
pub fn per_cm_to_per_m(alpha_per_cm: f64) -> f64 {
    alpha_per_cm * 100.0
}

#[inline]
pub fn per_m_to_per_cm(alpha_per_m: f64) -> f64 {
    alpha_per_m / 100.0
}

#[inline]
pub fn mm_to_m(length_mm: f64) -> f64 {
    length_mm * 1e-3
}

#[inline]
pub fn m_to_mm(length_m: f64) -> f64 {
    length_m * 1e3
}

/// Half-width (HWHM) in rad/s from a full width (FWHM) in GHz.
#[inline]
pub fn fwhm_ghz_to_half_width(fwhm_ghz: f64) -> f64 {
    ghz_to_angular(fwhm_ghz) / 2.0
}

#[inline]
pub fn half_width_to_fwhm_ghz(half_width: f64) -> f64 {
    angular_to_ghz(half_width) * 2.0
}

/// Splitting rate in rad/s per tesla from GHz per tesla.
#[inline]
pub fn ghz_per_t_to_angular(rate_ghz_per_t: f64) -> f64 {
    ghz_to_angular(rate_ghz_per_t)
}

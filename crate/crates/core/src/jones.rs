//! Brute-force Jones-matrix propagation through the full optical train,
//! used as an independent check on [`crate::transfer::transmission`].
//!
//! Unlike the closed form, this carries the full wavenumbers (host phase
//! included) through the doped crystal and then through the compensator.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::Result;
use crate::filter::FilterConfig;

/// Row-major 2x2 complex matrix in the (H, V) basis.
pub type Jones = [Complex64; 4];
pub type JonesVector = [Complex64; 2];

pub const JONES_IDENTITY: Jones = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
];

#[inline]
pub fn diagonal(h: Complex64, v: Complex64) -> Jones {
    [h, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), v]
}

/// A.B
#[inline]
pub fn a_x_b(a: &Jones, b: &Jones) -> Jones {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

#[inline]
pub fn apply(m: &Jones, v: &JonesVector) -> JonesVector {
    [m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]]
}

/// Second crystal in the Faraday cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compensator {
    /// Undoped, same length, c-axis rotated by 90 degrees.
    Matched,
    /// No second crystal.
    Absent,
}

/// Transmission by explicit propagation with the matched compensator.
pub fn jones_oracle(config: &FilterConfig, omega: f64) -> Result<f64> {
    jones_oracle_with(config, omega, Compensator::Matched)
}

pub fn jones_oracle_with(config: &FilterConfig, omega: f64, compensator: Compensator) -> Result<f64> {
    let response = config.response(omega)?;
    let (k_h, k_v) = response.wavenumbers();
    let l = config.length();
    let i = Complex64::i();

    let doped = diagonal((i * k_h * l).exp(), (i * k_v * l).exp());
    let second = match compensator {
        // H light now travels along the undoped crystal's ordinary axis
        Compensator::Matched => diagonal(
            Complex64::from_polar(1.0, response.k0_v * l),
            Complex64::from_polar(1.0, response.k0_h * l),
        ),
        Compensator::Absent => JONES_IDENTITY,
    };
    let cell = a_x_b(&second, &doped);

    let input: JonesVector = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)];
    let out = apply(&cell, &input);
    let analyzed = (out[0] - out[1]) * FRAC_1_SQRT_2;
    let input_power = input[0].norm_sqr() + input[1].norm_sqr();
    Ok(analyzed.norm_sqr() / input_power)
}

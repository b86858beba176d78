//! Filter observables: rotation angle and transmission between crossed
//! polarizers, with the host birefringence cancelled by a matched,
//! 90-degree-rotated undoped crystal.

use num_complex::Complex64;

use crate::error::Result;
use crate::filter::FilterConfig;

/// Faraday rotation `(L/2) Re(k_H - k_V)`, unwrapped.
#[inline]
pub fn rotation_angle(k_h: Complex64, k_v: Complex64, length_m: f64) -> f64 {
    0.5 * length_m * (k_h - k_v).re
}

/// `T = |exp(i k_H L) - exp(i k_V L)|^2 / 4` for compensated (dopant-only)
/// wavenumbers. Both exponentials have modulus at most one, so `T <= 1`
/// holds analytically; the clamp only absorbs rounding.
pub fn transmission_from_wavenumbers(k_h: Complex64, k_v: Complex64, length_m: f64) -> f64 {
    let i = Complex64::i();
    let out = (i * k_h * length_m).exp() - (i * k_v * length_m).exp();
    (0.25 * out.norm_sqr()).min(1.0)
}

/// Expanded form of the transmission in terms of the two depths and the
/// rotation angle. The cross term decays with the mean depth.
pub fn transmission_closed_form(depth_h: f64, depth_v: f64, rotation: f64) -> f64 {
    0.25 * (-depth_h).exp() + 0.25 * (-depth_v).exp()
        - 0.5 * (2.0 * rotation).cos() * (-(depth_h + depth_v) / 2.0).exp()
}

/// Transmission of the filter at angular frequency `omega`.
pub fn transmission(config: &FilterConfig, omega: f64) -> Result<f64> {
    let response = config.response(omega)?;
    let (k_h, k_v) = response.differential_wavenumbers();
    Ok(transmission_from_wavenumbers(k_h, k_v, config.length()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn equal_wavenumbers_give_no_rotation_and_no_light() {
        let k = Complex64::new(123.0, 45.0);
        assert_eq!(rotation_angle(k, k, 0.01), 0.0);
        assert_eq!(transmission_from_wavenumbers(k, k, 0.01), 0.0);
    }

    #[test]
    fn quarter_turn_rotation() {
        let l = 0.0085;
        let k_h = Complex64::new(PI / l, 0.0);
        let k_v = Complex64::new(0.0, 0.0);
        assert_abs_diff_eq!(rotation_angle(k_h, k_v, l), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(transmission_from_wavenumbers(k_h, k_v, l), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_matches_magnitude_form() {
        let l = 0.004;
        for (re_h, im_h, re_v, im_v) in [
            (10.0, 5.0, -20.0, 1.0),
            (400.0, 0.0, -300.0, 2.0),
            (0.0, 1000.0, 50.0, 10.0),
            (-800.0, 30.0, 800.0, 30.0),
        ] {
            let k_h = Complex64::new(re_h, im_h);
            let k_v = Complex64::new(re_v, im_v);
            let direct = transmission_from_wavenumbers(k_h, k_v, l);
            let expanded = transmission_closed_form(2.0 * im_h * l, 2.0 * im_v * l, rotation_angle(k_h, k_v, l));
            assert_abs_diff_eq!(direct, expanded, epsilon = 1e-15);
        }
    }
}

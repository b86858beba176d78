//! Complex susceptibility of the doped crystal, the small-susceptibility
//! dispersion relation, and absorption depth.

use num_complex::Complex64;

use crate::units::SPEED_OF_LIGHT;
use crate::zeeman::{Polarization, TransitionSet};

/// Host (undoped) wavenumber `n0 * omega / c`, rad/m.
#[inline]
pub fn host_wavenumber(omega: f64, n0: f64) -> f64 {
    n0 * omega / SPEED_OF_LIGHT
}

/// Lorentzian susceptibility of the lines carrying polarization `pol`:
///
/// `chi(omega) = -sum_q alpha_q delta_q / (k0 [(omega - omega_q) + i delta_q])`
///
/// The real and imaginary parts are formed separately so that `Im chi >= 0`
/// holds exactly, not just up to rounding.
pub fn susceptibility(lines: &TransitionSet, pol: Polarization, omega: f64, k0: f64) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for line in lines.with_polarization(pol) {
        let detuning = line.detuning(omega);
        let width = line.half_width;
        let denom = k0 * (detuning * detuning + width * width);
        let strength = line.absorption * width;
        re -= strength * detuning / denom;
        im += strength * width / denom;
    }
    Complex64::new(re, im)
}

/// Complex wavenumber `k0 (1 + chi/2)` with `k0 = n0 omega / c`.
pub fn wavenumber(omega: f64, n0: f64, chi: Complex64) -> Complex64 {
    let k0 = host_wavenumber(omega, n0);
    k0 * (1.0 + chi / 2.0)
}

/// Intensity absorption depth `2 Im(k) L`; attenuation is `exp(-d)`.
#[inline]
pub fn absorption_depth(k: Complex64, length_m: f64) -> f64 {
    2.0 * k.im * length_m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units;
    use crate::zeeman::{zeeman_transitions, LineLabel, LineParams, LineStrengths, ZeemanConfig};
    use approx::assert_relative_eq;

    fn single_line(label: LineLabel, alpha_per_cm: f64, fwhm_ghz: f64, field_t: f64) -> TransitionSet {
        let mut lines = [LineParams::from_human(0.0, 1.0); 4];
        lines[label.index()] = LineParams::from_human(alpha_per_cm, fwhm_ghz);
        let z = ZeemanConfig::from_wavelength_nm(879.7, 12.0, 5.0, field_t).unwrap();
        zeeman_transitions(&z, &LineStrengths::new(lines).unwrap())
    }

    #[test]
    fn resonance_is_purely_imaginary() {
        let set = single_line(LineLabel::B, 10.0, 2.0, 0.0);
        let line = set.get(LineLabel::B);
        let omega = line.frequency();
        let k0 = host_wavenumber(omega, 2.17);
        let chi = susceptibility(&set, Polarization::H, omega, k0);
        assert_eq!(chi.re, 0.0);
        assert_relative_eq!(chi.im, line.absorption / k0, max_relative = 1e-12);
        // V carries nothing here
        assert_eq!(susceptibility(&set, Polarization::V, omega, k0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn far_tail_vanishes() {
        let set = single_line(LineLabel::C, 30.0, 1.0, 0.5);
        let line = set.get(LineLabel::C);
        let k0 = host_wavenumber(line.frequency(), 2.17);
        let bound = 1.000_000_1 * line.absorption * line.half_width / (k0 * 1e6 * line.half_width);
        for sign in [-1.0, 1.0] {
            let omega = line.frequency() + sign * 1e6 * line.half_width;
            let chi = susceptibility(&set, Polarization::H, omega, k0);
            assert!(chi.norm() <= bound);
        }
    }

    #[test]
    fn symmetric_pair_cancels_real_part() {
        // b and c at +-(Dg-De)/2 around the centre, equal strengths
        let z = ZeemanConfig::from_wavelength_nm(879.7, 12.0, 5.0, 0.5).unwrap();
        let s = LineStrengths::uniform(LineParams::from_human(10.0, 2.0)).unwrap();
        let set = zeeman_transitions(&z, &s);
        let k0 = host_wavenumber(z.center, 2.17);
        let chi = susceptibility(&set, Polarization::H, z.center, k0);
        assert_eq!(chi.re, 0.0);

        let b = set.get(LineLabel::B);
        let one = single_line(LineLabel::B, 10.0, 2.0, 0.5);
        let single = susceptibility(&one, Polarization::H, z.center, k0);
        assert_relative_eq!(chi.im, 2.0 * single.im, max_relative = 1e-14);
        assert!(b.offset < 0.0);
    }

    #[test]
    fn dispersion_sign_around_resonance() {
        let set = single_line(LineLabel::A, 10.0, 2.0, 0.3);
        let line = set.get(LineLabel::A);
        let k0 = host_wavenumber(line.frequency(), 1.97);
        for ghz in [0.1, 1.0, 5.0, 50.0] {
            let step = units::ghz_to_angular(ghz);
            let above = susceptibility(&set, Polarization::V, line.frequency() + step, k0);
            let below = susceptibility(&set, Polarization::V, line.frequency() - step, k0);
            assert!(above.re < 0.0, "above resonance at {ghz} GHz");
            assert!(below.re > 0.0, "below resonance at {ghz} GHz");
        }
    }

    #[test]
    fn wavenumber_limits() {
        let omega = units::wavelength_nm_to_angular(879.7);
        let k0 = host_wavenumber(omega, 2.0);
        assert_eq!(wavenumber(omega, 2.0, Complex64::new(0.0, 0.0)), Complex64::new(k0, 0.0));

        let alpha = 1234.0;
        let k = wavenumber(omega, 2.0, Complex64::new(0.0, alpha / k0));
        assert_relative_eq!(k.im, alpha / 2.0, max_relative = 1e-12);
        assert_relative_eq!(absorption_depth(k, 0.0009), alpha * 0.0009, max_relative = 1e-12);
    }

    #[test]
    fn first_order_expansion_error_is_second_order() {
        // exact relation k = k0 sqrt(1 + chi) as the independent reference
        let omega = units::wavelength_nm_to_angular(879.7);
        let n0 = 1.966;
        let k0 = host_wavenumber(omega, n0);
        for phase in 0..16 {
            let chi = Complex64::from_polar(1e-3, phase as f64 * std::f64::consts::PI / 8.0);
            let approx = wavenumber(omega, n0, chi);
            let exact = k0 * (1.0 + chi).sqrt();
            let rel = (approx - exact).norm() / exact.norm();
            assert!(rel <= chi.norm_sqr() / 4.0, "phase {phase}: rel {rel}");
        }
    }

    #[test]
    fn zero_wavenumber_gives_zero_depth() {
        assert_eq!(absorption_depth(Complex64::new(1e7, 0.0), 0.01), 0.0);
    }
}

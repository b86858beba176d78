//! Host refractive index from a four-term Sellmeier expansion,
//! `n^2 = A + B / (lambda^2 - C) - D * lambda^2` with `lambda` in micrometres.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients for one principal index of a uniaxial crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SellmeierSet {
    pub a: f64,
    /// Numerator of the resonance term, um^2.
    pub b_um2: f64,
    /// Resonance offset, um^2.
    pub c_um2: f64,
    /// Coefficient of the quadratic infrared term, um^-2.
    pub d_per_um2: f64,
    pub valid_min_um: f64,
    pub valid_max_um: f64,
}

/// YVO4 ordinary index.
pub const YVO4_ORDINARY: SellmeierSet = SellmeierSet {
    a: 3.77834,
    b_um2: 0.069736,
    c_um2: 0.04724,
    d_per_um2: 0.0108133,
    valid_min_um: 0.4,
    valid_max_um: 3.4,
};

/// YVO4 extraordinary index.
pub const YVO4_EXTRAORDINARY: SellmeierSet = SellmeierSet {
    a: 4.59905,
    b_um2: 0.110534,
    c_um2: 0.04813,
    d_per_um2: 0.0122676,
    valid_min_um: 0.4,
    valid_max_um: 3.4,
};

impl SellmeierSet {
    /// Builds a set and checks that it describes a dielectric (`n^2 > 1`)
    /// everywhere on its declared range.
    pub fn new(
        a: f64,
        b_um2: f64,
        c_um2: f64,
        d_per_um2: f64,
        valid_min_um: f64,
        valid_max_um: f64,
    ) -> Result<Self> {
        let set = SellmeierSet {
            a,
            b_um2,
            c_um2,
            d_per_um2,
            valid_min_um,
            valid_max_um,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let coeffs = [self.a, self.b_um2, self.c_um2, self.d_per_um2];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCoefficients("non-finite coefficient".into()));
        }
        let (lo, hi) = (self.valid_min_um, self.valid_max_um);
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
            return Err(Error::InvalidCoefficients(format!(
                "valid range [{lo}, {hi}] um must be a nonempty interval with positive endpoints"
            )));
        }
        let (s0, s1) = (lo * lo, hi * hi);
        if self.c_um2 >= s0 && self.c_um2 <= s1 {
            return Err(Error::InvalidCoefficients(format!(
                "resonance at lambda^2 = {} um^2 lies inside the valid range",
                self.c_um2
            )));
        }
        // n^2(s) is monotone on the range unless B and D have opposite signs, in
        // which case its single stationary point is at (s - C)^2 = -B/D.
        let mut candidates = vec![s0, s1];
        if self.d_per_um2 != 0.0 && self.b_um2 / self.d_per_um2 < 0.0 {
            let r = (-self.b_um2 / self.d_per_um2).sqrt();
            candidates.extend([self.c_um2 - r, self.c_um2 + r]);
        }
        for s in candidates.into_iter().filter(|s| *s >= s0 && *s <= s1) {
            let n2 = self.index_squared_at(s);
            if n2.is_nan() || n2 <= 1.0 {
                return Err(Error::InvalidCoefficients(format!(
                    "n^2 = {n2} <= 1 at lambda = {} um",
                    s.sqrt()
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, wavelength_um: f64) -> bool {
        wavelength_um >= self.valid_min_um && wavelength_um <= self.valid_max_um
    }

    #[inline]
    fn index_squared_at(&self, lambda_sq: f64) -> f64 {
        self.a + self.b_um2 / (lambda_sq - self.c_um2) - self.d_per_um2 * lambda_sq
    }

    /// Refractive index at a vacuum wavelength in micrometres.
    pub fn index(&self, wavelength_um: f64) -> Result<f64> {
        if !self.contains(wavelength_um) {
            return Err(Error::WavelengthOutOfRange {
                wavelength_um,
                min_um: self.valid_min_um,
                max_um: self.valid_max_um,
            });
        }
        let lambda_sq = wavelength_um * wavelength_um;
        if lambda_sq == self.c_um2 {
            return Err(Error::InvalidCoefficients(
                "wavelength sits on the Sellmeier pole".into(),
            ));
        }
        let n2 = self.index_squared_at(lambda_sq);
        if n2.is_nan() || n2 <= 1.0 {
            return Err(Error::InvalidCoefficients(format!(
                "n^2 = {n2} at lambda = {wavelength_um} um"
            )));
        }
        Ok(n2.sqrt())
    }
}

/// Free-function form of [`SellmeierSet::index`].
pub fn sellmeier_index(set: &SellmeierSet, wavelength_um: f64) -> Result<f64> {
    set.index(wavelength_um)
}

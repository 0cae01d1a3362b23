//! Conversion between SI quantities and the natural units of an atom run.
//!
//! An atom specified by its transition wavelength λ sets the length unit
//! L = λ/2π = c/ω10 and the energy unit ħω10, so ω10 = 1 in the library.

use anyhow::{ensure, Result};
use chernpolder_core::{ALPHA, SPEED_OF_LIGHT_SI};

/// Reduced Planck constant in J·s (CODATA 2018, exact).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Bohr radius in m (CODATA 2018).
pub const BOHR_RADIUS_SI: f64 = 5.291_772_109_03e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiScale {
    wavelength: f64,
}

impl SiScale {
    pub fn from_wavelength(wavelength_m: f64) -> Result<Self> {
        ensure!(
            wavelength_m > 0.0 && wavelength_m.is_finite(),
            "transition wavelength must be finite and > 0, got {wavelength_m}"
        );
        Ok(Self {
            wavelength: wavelength_m,
        })
    }

    /// Inverse of [`SiScale::angular_frequency`].
    pub fn from_angular_frequency(omega_rad_s: f64) -> Result<Self> {
        Self::from_wavelength(2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_SI / omega_rad_s)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// ω10 = 2πc/λ in rad/s.
    pub fn angular_frequency(&self) -> f64 {
        2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_SI / self.wavelength
    }

    /// Length unit c/ω10 in metres.
    pub fn length_unit(&self) -> f64 {
        self.wavelength / (2.0 * std::f64::consts::PI)
    }

    /// Energy unit ħω10 in joules.
    pub fn energy_unit(&self) -> f64 {
        HBAR_SI * self.angular_frequency()
    }

    /// Force unit ħω10²/c in newtons.
    pub fn force_unit(&self) -> f64 {
        self.energy_unit() / self.length_unit()
    }

    pub fn length_to_si(&self, z: f64) -> f64 {
        z * self.length_unit()
    }

    pub fn length_from_si(&self, z_m: f64) -> f64 {
        z_m / self.length_unit()
    }

    pub fn force_to_si(&self, f: f64) -> f64 {
        f * self.force_unit()
    }

    /// Dipole moment d·e·a₀ in natural units. With Gaussian e² = αħc the
    /// squared moment is α(d a₀)² ħc, which in units of ħω10·L³ gives
    /// μ = d √α a₀ / L.
    pub fn dipole_from_atomic_units(&self, d: f64) -> f64 {
        d * ALPHA.sqrt() * BOHR_RADIUS_SI / self.length_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavelength_round_trip() {
        let s = SiScale::from_wavelength(707.202e-9).unwrap();
        let back = SiScale::from_angular_frequency(s.angular_frequency()).unwrap();
        assert!((back.wavelength() / 707.202e-9 - 1.0).abs() < 1e-12);
        assert!((s.length_from_si(s.length_to_si(3.5)) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_wavelength() {
        assert!(SiScale::from_wavelength(0.0).is_err());
        assert!(SiScale::from_wavelength(f64::NAN).is_err());
    }
}

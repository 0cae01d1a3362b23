//! Reflection coefficients of a free-standing conducting sheet with Hall
//! response.
//!
//! The sheet at z = 0 carries the surface current K = σ·E_∥. Matching the
//! fields across it gives, with x = k_z c/ω, L = 2πσ_xx/c and H = 2πσ_xy/c,
//!
//! ```text
//! Δ    = (x + L)(1 + L x) + H² x
//! r_ss = −(L + L² x + H² x) / Δ
//! r_pp =  x (L x + L² + H²) / Δ
//! r_sp = r_ps = −H x / Δ
//! ```
//!
//! A perfect conductor (L → ∞) gives r_ss = −1, r_pp = +1.

use num_complex::Complex64;

use crate::conductivity::{ConductivityTensor, FrequencyArgument};
use crate::constants::ALPHA;
use crate::error::{Error, Result};

const TWO_PI_ALPHA: f64 = 2.0 * std::f64::consts::PI * ALPHA;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionMatrix {
    pub ss: Complex64,
    pub sp: Complex64,
    pub ps: Complex64,
    pub pp: Complex64,
}

impl ReflectionMatrix {
    pub const ZERO: Self = Self {
        ss: Complex64::new(0.0, 0.0),
        sp: Complex64::new(0.0, 0.0),
        ps: Complex64::new(0.0, 0.0),
        pp: Complex64::new(0.0, 0.0),
    };

    /// Reflected power for s- and p-incidence, |r_ss|² + |r_ps|² and
    /// |r_pp|² + |r_sp|². Only meaningful for propagating waves.
    pub fn reflected_power(&self) -> (f64, f64) {
        (
            self.ss.norm_sqr() + self.ps.norm_sqr(),
            self.pp.norm_sqr() + self.sp.norm_sqr(),
        )
    }
}

/// Dimensionless sheet couplings 2πσ/c; in units where σ is measured in e²/ħ
/// these are 2πα σ̃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetCoupling {
    pub longitudinal: Complex64,
    pub hall: Complex64,
}

impl SheetCoupling {
    pub fn from_sigma(sigma: &ConductivityTensor) -> Self {
        Self {
            longitudinal: sigma.xx * TWO_PI_ALPHA,
            hall: sigma.xy * TWO_PI_ALPHA,
        }
    }

    /// Coupling of the quantised sheet, L = 0 and H = Cα.
    pub fn quantized(chern: i64) -> Self {
        Self {
            longitudinal: Complex64::new(0.0, 0.0),
            hall: Complex64::new(chern as f64 * ALPHA, 0.0),
        }
    }

    /// Roots x of Δ(x) = 0, i.e. L x² + (1 + L² + H²) x + L = 0. These are the
    /// guided modes of the sheet; none exist when L = 0.
    pub fn mode_roots(&self) -> Vec<Complex64> {
        let l = self.longitudinal;
        if l == Complex64::new(0.0, 0.0) {
            return Vec::new();
        }
        let b = 1.0 + l * l + self.hall * self.hall;
        let disc = (b * b - 4.0 * l * l).sqrt();
        // Pick the sign that avoids cancellation, then use the product of roots.
        let q = if (b.conj() * disc).re >= 0.0 {
            -0.5 * (b + disc)
        } else {
            -0.5 * (b - disc)
        };
        vec![q / l, l / q]
    }
}

/// Coefficients as a function of x = k_z c/ω.
pub fn reflection_from_ratio(coupling: SheetCoupling, x: Complex64) -> ReflectionMatrix {
    let l = coupling.longitudinal;
    let h = coupling.hall;
    let h2 = h * h;
    if l == Complex64::new(0.0, 0.0) {
        let d = 1.0 + h2;
        let rs = -h2 / d;
        let rh = -h / d;
        return ReflectionMatrix {
            ss: rs,
            sp: rh,
            ps: rh,
            pp: -rs,
        };
    }
    let delta = (x + l) * (1.0 + l * x) + h2 * x;
    let sp = -h * x / delta;
    ReflectionMatrix {
        ss: -(l + l * l * x + h2 * x) / delta,
        sp,
        ps: sp,
        pp: x * (l * x + l * l + h2) / delta,
    }
}

/// Zero-frequency limit on the imaginary axis at fixed q = √(ξ² + k_∥²).
///
/// There σ_xx(iξ) ≈ χ ξ, so L x → 2πα χ q stays finite while L → 0.
/// `polarizability` is χ = lim σ_xx(iξ)/ξ in units of e²/ħ per unit frequency.
pub fn reflection_static(hall_sigma: f64, polarizability: f64, q: f64) -> ReflectionMatrix {
    let a = TWO_PI_ALPHA * polarizability * q;
    let h = TWO_PI_ALPHA * hall_sigma;
    let d = 1.0 + a + h * h;
    let c = |v: f64| Complex64::new(v, 0.0);
    ReflectionMatrix {
        ss: c(-h * h / d),
        sp: c(-h / d),
        ps: c(-h / d),
        pp: c((a + h * h) / d),
    }
}

/// Quantised-Hall sheet: frequency and wavevector independent.
pub fn reflection_nondispersive(chern: i64) -> ReflectionMatrix {
    reflection_from_ratio(SheetCoupling::quantized(chern), Complex64::new(1.0, 0.0))
}

/// A (frequency, in-plane wavevector) pair with the normal wavenumber on the
/// physical branch Im k_z ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicPoint {
    freq: FrequencyArgument,
    k_par: f64,
    k_z: Complex64,
}

impl KinematicPoint {
    pub fn new(freq: FrequencyArgument, k_par: f64) -> Result<Self> {
        if !(k_par >= 0.0) || !k_par.is_finite() {
            return Err(Error::domain(format!(
                "k_par must be finite and >= 0, got {k_par}"
            )));
        }
        let w = freq.value();
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::domain(format!(
                "frequency must be finite and >= 0, got {w}"
            )));
        }
        if w == 0.0 && k_par == 0.0 {
            return Err(Error::domain("frequency and k_par cannot both vanish"));
        }
        let k_z = match freq {
            FrequencyArgument::Real(w) if k_par <= w => {
                Complex64::new((w * w - k_par * k_par).sqrt(), 0.0)
            }
            FrequencyArgument::Real(w) => Complex64::new(0.0, (k_par * k_par - w * w).sqrt()),
            FrequencyArgument::Imaginary(xi) => Complex64::new(0.0, xi.hypot(k_par)),
        };
        Ok(Self { freq, k_par, k_z })
    }

    pub fn freq(&self) -> FrequencyArgument {
        self.freq
    }

    pub fn k_par(&self) -> f64 {
        self.k_par
    }

    pub fn k_z(&self) -> Complex64 {
        self.k_z
    }

    pub fn is_propagating(&self) -> bool {
        self.k_z.im == 0.0
    }
}

/// Reflection matrix of a sheet with conductivity `sigma` at `point`.
///
/// At zero frequency σ_xx of an insulator vanishes, so only the Hall part
/// contributes there.
pub fn reflection_matrix(sigma: &ConductivityTensor, point: &KinematicPoint) -> ReflectionMatrix {
    let coupling = SheetCoupling::from_sigma(sigma);
    let q = point.freq.as_complex();
    if q == Complex64::new(0.0, 0.0) {
        return reflection_from_ratio(
            SheetCoupling {
                longitudinal: Complex64::new(0.0, 0.0),
                ..coupling
            },
            Complex64::new(1.0, 0.0),
        );
    }
    reflection_from_ratio(coupling, point.k_z / q)
}

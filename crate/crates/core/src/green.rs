//! Reflection Green tensor of the sheet at the atom's position.
//!
//! Only G_xx (= G_yy) and G_xy (= −G_yx) are needed for a dipole circulating
//! in the plane parallel to the sheet. Units ħ = c = 1; G carries 1/length³.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conductivity::SurfaceModel;
use crate::constants::ALPHA;
use crate::error::{Error, Result};
use crate::numerics::{adaptive_quad_points, upper_incomplete_gamma3, QuadratureSpec};
use crate::reflection::{
    reflection_from_ratio, reflection_static, ReflectionMatrix, SheetCoupling,
};

/// Evanescent integrals are cut where e^{−2κz0} = e^{−40}.
const DECAY_CUTOFF: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenPair {
    pub xx: Complex64,
    pub xy: Complex64,
}

impl GreenPair {
    pub const ZERO: Self = Self {
        xx: Complex64::new(0.0, 0.0),
        xy: Complex64::new(0.0, 0.0),
    };

    pub fn yy(&self) -> Complex64 {
        self.xx
    }

    pub fn yx(&self) -> Complex64 {
        -self.xy
    }
}

/// Evaluate G itself or its derivative with respect to the atom height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeightDerivative {
    #[default]
    Value,
    First,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenOptions {
    pub quadrature: QuadratureSpec,
    /// Deform the propagating k_z integral onto two vertical rays in the upper
    /// half plane. Skipped automatically when a sheet mode lies in the way.
    pub steepest_descent: bool,
    pub derivative: HeightDerivative,
}

impl Default for GreenOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            steepest_descent: false,
            derivative: HeightDerivative::Value,
        }
    }
}

impl GreenOptions {
    pub fn derivative(self, derivative: HeightDerivative) -> Self {
        Self { derivative, ..self }
    }
}

fn check_height(z0: f64) -> Result<()> {
    if z0 > 0.0 && z0.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "z0 must be finite and > 0, got {z0}"
        )))
    }
}

fn check_frequency(name: &str, v: f64, allow_zero: bool) -> Result<()> {
    let ok = v.is_finite() && if allow_zero { v >= 0.0 } else { v > 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be finite and {} 0, got {v}",
            if allow_zero { ">=" } else { ">" }
        )))
    }
}

fn quad(f: impl Fn(f64) -> Complex64, points: &[f64], spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(adaptive_quad_points(f, points, spec)?.value)
}

/// Splits [a, b] into pieces of roughly one oscillation period `period`.
fn periodic_points(a: f64, b: f64, period: f64) -> Vec<f64> {
    let n = ((b - a) / period).ceil().clamp(1.0, 4096.0) as usize;
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Real-frequency Green tensor for a sheet of given coupling at frequency ω.
///
/// Propagating waves (0 ≤ k_z ≤ ω) and evanescent waves (k_z = iκ) are
/// integrated separately:
///
/// ```text
/// G_xx = (i/2) ω² ∫₀^ω dk_z e^{2ik_z z}(r_ss − x² r_pp) + (ω²/2) ∫₀^∞ dκ e^{−2κz}(r_ss + κ²/ω² r_pp)
/// G_xy = i ω ∫₀^ω dk_z k_z e^{2ik_z z} r_sp            + i ω ∫₀^∞ dκ κ e^{−2κz} r_sp
/// ```
/// with x = k_z/ω.
pub fn green_real_coupling(
    coupling: SheetCoupling,
    omega: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    let parts = green_real_split(coupling, omega, z0, opts)?;
    Ok(GreenPair {
        xx: parts.propagating.xx + parts.evanescent.xx,
        xy: parts.propagating.xy + parts.evanescent.xy,
    })
}

/// Contributions from k_∥ < ω and k_∥ > ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealAxisParts {
    pub propagating: GreenPair,
    pub evanescent: GreenPair,
}

/// [`green_real_coupling`] without summing the two wavevector ranges.
pub fn green_real_split(
    coupling: SheetCoupling,
    omega: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<RealAxisParts> {
    check_frequency("omega", omega, false)?;
    check_height(z0)?;
    let q = omega;
    let i = Complex64::new(0.0, 1.0);
    let deriv = opts.derivative == HeightDerivative::First;
    let spec = &opts.quadrature;
    let reciprocal = coupling.hall == Complex64::new(0.0, 0.0);

    // Propagating part as a function of complex k_z; analytic away from sheet modes.
    let g_prop = |k: Complex64| -> (Complex64, Complex64) {
        let x = k / q;
        let r = reflection_from_ratio(coupling, x);
        let weight = if deriv {
            2.0 * i * k
        } else {
            Complex64::new(1.0, 0.0)
        };
        let xx = 0.5 * i * q * q * (r.ss - x * x * r.pp) * weight;
        let xy = i * q * k * r.sp * weight;
        (xx, xy)
    };

    let use_rays = opts.steepest_descent && !mode_blocks_rays(&coupling);
    let (prop_xx, prop_xy) = if use_rays {
        // ∫₀^q g(k) e^{2ikz} dk = i∫₀^∞ [g(is) − e^{2iqz} g(q + is)] e^{−2sz} ds
        let phase = (2.0 * i * q * z0).exp();
        let pts = [0.0, 0.5 / z0, 2.0 / z0, DECAY_CUTOFF / z0];
        let ray = |s: f64, pick: fn((Complex64, Complex64)) -> Complex64| {
            let a = pick(g_prop(Complex64::new(0.0, s)));
            let b = pick(g_prop(Complex64::new(q, s)));
            i * (a - phase * b) * (-2.0 * s * z0).exp()
        };
        let xx = quad(|s| ray(s, |p| p.0), &pts, spec)?;
        let xy = if reciprocal {
            Complex64::new(0.0, 0.0)
        } else {
            quad(|s| ray(s, |p| p.1), &pts, spec)?
        };
        (xx, xy)
    } else {
        let pts = periodic_points(0.0, q, PI / z0);
        let osc = |k: f64| (2.0 * i * k * z0).exp();
        let xx = quad(|k| g_prop(Complex64::new(k, 0.0)).0 * osc(k), &pts, spec)?;
        let xy = if reciprocal {
            Complex64::new(0.0, 0.0)
        } else {
            quad(|k| g_prop(Complex64::new(k, 0.0)).1 * osc(k), &pts, spec)?
        };
        (xx, xy)
    };

    // Evanescent part.
    let kappa_max = DECAY_CUTOFF / z0;
    let pts = evanescent_points(&coupling, q, kappa_max);
    let evan = |kappa: f64| -> (ReflectionMatrix, Complex64) {
        let x = Complex64::new(0.0, kappa / q);
        let damp = (-2.0 * kappa * z0).exp() * if deriv { -2.0 * kappa } else { 1.0 };
        (
            reflection_from_ratio(coupling, x),
            Complex64::new(damp, 0.0),
        )
    };
    let evan_xx = quad(
        |kappa| {
            let (r, d) = evan(kappa);
            0.5 * q * q * (r.ss + (kappa * kappa / (q * q)) * r.pp) * d
        },
        &pts,
        spec,
    )?;
    let evan_xy = if reciprocal {
        Complex64::new(0.0, 0.0)
    } else {
        quad(
            |kappa| {
                let (r, d) = evan(kappa);
                i * q * kappa * r.sp * d
            },
            &pts,
            spec,
        )?
    };

    Ok(RealAxisParts {
        propagating: GreenPair {
            xx: prop_xx,
            xy: prop_xy,
        },
        evanescent: GreenPair {
            xx: evan_xx,
            xy: evan_xy,
        },
    })
}

/// True when a sheet mode sits in (or just beside) the strip 0 ≤ Re x ≤ 1,
/// Im x > 0 swept by the ray deformation.
fn mode_blocks_rays(coupling: &SheetCoupling) -> bool {
    coupling
        .mode_roots()
        .iter()
        .any(|x| x.im > 0.0 && x.re >= -0.05 && x.re <= 1.05)
}

/// Breakpoints for the κ integral, clustered around a guided-mode pole when it
/// falls inside the integration range.
fn evanescent_points(coupling: &SheetCoupling, q: f64, kappa_max: f64) -> Vec<f64> {
    let mut pts = vec![0.0, kappa_max];
    let mut add = |v: f64| {
        if v > 0.0 && v < kappa_max {
            pts.push(v);
        }
    };
    add(q);
    for x in coupling.mode_roots() {
        // x = iκ/q  ⇒  κ = −i q x
        let kappa = Complex64::new(0.0, -q) * x;
        if kappa.re > 0.0 {
            let w = kappa.im.abs().max(1e-12 * q);
            for m in [-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0] {
                add(kappa.re + m * w);
            }
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    pts
}

/// Sheet response on the imaginary axis at one ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImaginarySheet {
    Coupling(SheetCoupling),
    /// ξ = 0: Hall conductivity and the static slope χ = lim σ_xx(iξ)/ξ.
    Static {
        hall_sigma: f64,
        polarizability: f64,
    },
}

/// Imaginary-frequency Green tensor, real-valued.
///
/// With p = √(ξ² + k_∥²) ≥ ξ:
///
/// ```text
/// G_xx = ∫_ξ^∞ dp e^{−2pz}(−ξ²/2 r_ss + p²/2 r_pp)
/// G_xy = −ξ ∫_ξ^∞ dp p e^{−2pz} r_sp
/// ```
pub fn green_imag_sheet(
    sheet: ImaginarySheet,
    xi: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    let g = green_imag_sheet_scaled(sheet, xi, z0, opts)?;
    let e = (-2.0 * xi * z0).exp();
    Ok(GreenPair {
        xx: g.xx * e,
        xy: g.xy * e,
    })
}

/// e^{2ξz0}·G(iξ): the imaginary-axis tensor with its overall decay removed,
/// representable even where G itself underflows.
pub fn green_imag_sheet_scaled(
    sheet: ImaginarySheet,
    xi: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    check_frequency("xi", xi, true)?;
    check_height(z0)?;
    let deriv = opts.derivative == HeightDerivative::First;
    let refl = |p: f64| -> ReflectionMatrix {
        match sheet {
            ImaginarySheet::Coupling(c) => reflection_from_ratio(c, Complex64::new(p / xi, 0.0)),
            ImaginarySheet::Static {
                hall_sigma,
                polarizability,
            } => reflection_static(hall_sigma, polarizability, p),
        }
    };
    if xi == 0.0 {
        if let ImaginarySheet::Coupling(c) = sheet {
            if c.longitudinal != Complex64::new(0.0, 0.0) {
                return Err(Error::domain("xi = 0 needs the static sheet response"));
            }
        }
    }
    let s_max = DECAY_CUTOFF / z0;
    let pts = [0.0, 0.25 / z0, 1.0 / z0, 4.0 / z0, s_max];
    let weight = |p: f64, s: f64| (-2.0 * s * z0).exp() * if deriv { -2.0 * p } else { 1.0 };

    let xx = quad(
        |s| {
            let p = xi + s;
            let r = refl(p);
            Complex64::new(
                (-0.5 * xi * xi * r.ss.re + 0.5 * p * p * r.pp.re) * weight(p, s),
                0.0,
            )
        },
        &pts,
        &opts.quadrature,
    )?
    .re;
    // The Hall term carries an explicit factor ξ.
    let hall_zero = match sheet {
        ImaginarySheet::Coupling(c) => c.hall == Complex64::new(0.0, 0.0),
        ImaginarySheet::Static { .. } => true,
    };
    let xy = if hall_zero || xi == 0.0 {
        0.0
    } else {
        -xi * quad(
            |s| {
                let p = xi + s;
                Complex64::new(p * refl(p).sp.re * weight(p, s), 0.0)
            },
            &pts,
            &opts.quadrature,
        )?
        .re
    };
    Ok(GreenPair {
        xx: Complex64::new(xx, 0.0),
        xy: Complex64::new(xy, 0.0),
    })
}

/// Reflection Green tensor at real frequency ω > 0.
pub fn green_real_freq(surface: &SurfaceModel, omega: f64, z0: f64) -> Result<GreenPair> {
    green_real_freq_with(surface, omega, z0, &GreenOptions::default())
}

pub fn green_real_freq_with(
    surface: &SurfaceModel,
    omega: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    check_frequency("omega", omega, false)?;
    check_height(z0)?;
    let sigma = surface.sigma_real(omega)?;
    green_real_coupling(SheetCoupling::from_sigma(&sigma), omega, z0, opts)
}

/// Reflection Green tensor at imaginary frequency iξ, ξ ≥ 0.
pub fn green_imag_axis(surface: &SurfaceModel, xi: f64, z0: f64) -> Result<GreenPair> {
    green_imag_axis_with(surface, xi, z0, &GreenOptions::default())
}

pub fn green_imag_axis_with(
    surface: &SurfaceModel,
    xi: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    green_imag_sheet(imaginary_sheet(surface, xi)?, xi, z0, opts)
}

/// e^{2ξz0}·G(iξ); see [`green_imag_sheet_scaled`].
pub fn green_imag_axis_scaled(
    surface: &SurfaceModel,
    xi: f64,
    z0: f64,
    opts: &GreenOptions,
) -> Result<GreenPair> {
    green_imag_sheet_scaled(imaginary_sheet(surface, xi)?, xi, z0, opts)
}

/// Sheet response of `surface` at iξ in the form the imaginary-axis integrals
/// need.
pub fn imaginary_sheet(surface: &SurfaceModel, xi: f64) -> Result<ImaginarySheet> {
    check_frequency("xi", xi, true)?;
    let sigma = surface.sigma_imag(xi)?;
    Ok(if xi == 0.0 {
        ImaginarySheet::Static {
            hall_sigma: sigma.xy.re,
            polarizability: surface.static_xx_slope(),
        }
    } else {
        ImaginarySheet::Coupling(SheetCoupling::from_sigma(&sigma))
    })
}

fn hall_factors(chern: i64) -> (f64, f64) {
    let h = chern as f64 * ALPHA;
    let d = 1.0 + h * h;
    (h * h / d, h / d)
}

/// Closed-form imaginary-axis Green tensor of the quantised sheet.
///
/// ```text
/// G_xx = R [ξ² e^{−2ξz}/(4z) + Γ(3, 2ξz)/(16z³)]
/// G_xy = H (ξ²/(2z) + ξ/(4z²)) e^{−2ξz}
/// ```
/// with R = (Cα)²/(1 + (Cα)²) and H = Cα/(1 + (Cα)²).
pub fn green_nondispersive_closed(chern: i64, xi: f64, z0: f64) -> Result<GreenPair> {
    check_frequency("xi", xi, true)?;
    check_height(z0)?;
    let (r, h) = hall_factors(chern);
    let e = (-2.0 * xi * z0).exp();
    let xx = r
        * (xi * xi * e / (4.0 * z0)
            + upper_incomplete_gamma3(2.0 * xi * z0)? / (16.0 * z0.powi(3)));
    let xy = h * (xi * xi / (2.0 * z0) + xi / (4.0 * z0 * z0)) * e;
    Ok(GreenPair {
        xx: Complex64::new(xx, 0.0),
        xy: Complex64::new(xy, 0.0),
    })
}

/// Far-field form with Γ(3, x) expanded as (x² + 2x + 2)e^{−x}.
pub fn green_farfield(chern: i64, xi: f64, z0: f64) -> Result<GreenPair> {
    check_frequency("xi", xi, true)?;
    check_height(z0)?;
    let (r, h) = hall_factors(chern);
    let e = (-2.0 * xi * z0).exp();
    let xx = r * (xi * xi / (2.0 * z0) + xi / (4.0 * z0 * z0) + 1.0 / (8.0 * z0.powi(3))) * e;
    let xy = h * (xi * xi / (2.0 * z0) + xi / (4.0 * z0 * z0)) * e;
    Ok(GreenPair {
        xx: Complex64::new(xx, 0.0),
        xy: Complex64::new(xy, 0.0),
    })
}

/// Closed-form real-frequency Green tensor of the quantised sheet; the
/// continuation ω → iξ of [`green_farfield`].
pub fn green_nondispersive_real(chern: i64, omega: f64, z0: f64) -> Result<GreenPair> {
    check_frequency("omega", omega, false)?;
    check_height(z0)?;
    let (r, h) = hall_factors(chern);
    let q = Complex64::new(omega, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let e = (2.0 * i * q * z0).exp();
    let xx = r * e * (1.0 / (8.0 * z0.powi(3)) - i * q / (4.0 * z0 * z0) - q * q / (2.0 * z0));
    let xy = -h * e * (q * q / (2.0 * z0) + i * q / (4.0 * z0 * z0));
    Ok(GreenPair { xx, xy })
}

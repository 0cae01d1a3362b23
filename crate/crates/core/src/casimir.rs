//! Casimir-Polder shifts and forces on a circularly polarised two-level atom.
//!
//! The atom sits at height z0 above the sheet with transition dipole
//! μ^{10} = μ(1, ±i, 0)/√2. Energies are in the same unit as ω10 (ħ = c = 1),
//! μ² carries energy·length³.

use std::f64::consts::PI;

use crate::conductivity::SurfaceModel;
use crate::constants::ALPHA;
use crate::error::{Error, Result};
use crate::green::{
    green_imag_sheet, green_real_freq_with, imaginary_sheet, GreenOptions, GreenPair,
    HeightDerivative,
};
use crate::numerics::{semi_infinite_quad, QuadratureSpec};

/// Handedness of the transition dipole (1, ±i, 0)/√2 about the surface normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Right,
    Left,
}

impl Polarization {
    /// +1 for right, −1 for left.
    pub fn sign(self) -> f64 {
        match self {
            Self::Right => 1.0,
            Self::Left => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Right => Self::Left,
            Self::Left => Self::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomState {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Resonant,
    Nonresonant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForceMethod {
    /// Differentiate under the integral sign.
    #[default]
    Analytic,
    /// Five-point central difference with step 1e-4·z0.
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelAtom {
    mu: f64,
    omega10: f64,
    polarization: Polarization,
}

impl TwoLevelAtom {
    pub fn new(mu: f64, omega10: f64, polarization: Polarization) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::invalid(
                "mu",
                format!("must be finite and > 0, got {mu}"),
            ));
        }
        if !(omega10 > 0.0) || !omega10.is_finite() {
            return Err(Error::invalid(
                "omega10",
                format!("must be finite and > 0, got {omega10}"),
            ));
        }
        Ok(Self {
            mu,
            omega10,
            polarization,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn omega10(&self) -> f64 {
        self.omega10
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn with_polarization(self, polarization: Polarization) -> Self {
        Self {
            polarization,
            ..self
        }
    }

    /// Free-space spontaneous emission rate 4ω³μ²/3, used as the energy scale
    /// of nondimensional shifts.
    pub fn free_decay_rate(&self) -> f64 {
        4.0 * self.omega10.powi(3) * self.mu * self.mu / 3.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirOptions {
    /// Tolerances of the outer ξ integral.
    pub quadrature: QuadratureSpec,
    /// Tolerances of the inner wavevector integrals.
    pub green: QuadratureSpec,
    pub steepest_descent: bool,
    pub force_method: ForceMethod,
}

impl Default for CasimirOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            green: QuadratureSpec::default().with_rel_tol(1e-11),
            steepest_descent: false,
            force_method: ForceMethod::Analytic,
        }
    }
}

impl CasimirOptions {
    fn green_options(&self, derivative: HeightDerivative) -> GreenOptions {
        GreenOptions {
            quadrature: self.green,
            steepest_descent: self.steepest_descent,
            derivative,
        }
    }

    /// Tolerances tight enough that quadrature noise survives division by the
    /// finite-difference step.
    fn tightened(&self) -> Self {
        Self {
            quadrature: self
                .quadrature
                .with_rel_tol(self.quadrature.rel_tol.min(1e-12)),
            green: self.green.with_rel_tol(self.green.rel_tol.min(1e-13)),
            ..*self
        }
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

/// The two additive pieces of the resonant shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantComponents {
    /// −μ² Re G_xx(ω10)
    pub term_xx: f64,
    /// ∓μ² Im G_xy(ω10), upper sign for right polarisation.
    pub term_xy: f64,
    pub term_xx_nd: f64,
    pub term_xy_nd: f64,
}

impl ResonantComponents {
    pub fn total(&self) -> f64 {
        self.term_xx + self.term_xy
    }

    pub fn total_nd(&self) -> f64 {
        self.term_xx_nd + self.term_xy_nd
    }
}

fn resonant_from_green(atom: &TwoLevelAtom, g: GreenPair) -> ResonantComponents {
    let mu2 = atom.mu * atom.mu;
    let nd = 0.75 / atom.omega10.powi(3);
    let s = atom.polarization.sign();
    ResonantComponents {
        term_xx: -mu2 * g.xx.re,
        term_xy: -s * mu2 * g.xy.im,
        term_xx_nd: -nd * g.xx.re,
        term_xy_nd: -s * nd * g.xy.im,
    }
}

/// Resonant shift of the upper state, −μ²(Re G_xx ± Im G_xy) at ω10.
pub fn resonant_shift(atom: &TwoLevelAtom, surface: &SurfaceModel, z0: f64) -> Result<f64> {
    Ok(resonant_shift_components(atom, surface, z0, &CasimirOptions::default())?.total())
}

pub fn resonant_shift_components(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    opts: &CasimirOptions,
) -> Result<ResonantComponents> {
    check_height(z0)?;
    let g = green_real_freq_with(
        surface,
        atom.omega10,
        z0,
        &opts.green_options(HeightDerivative::Value),
    )?;
    Ok(resonant_from_green(atom, g))
}

fn nonresonant_integral(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    opts: &CasimirOptions,
    derivative: HeightDerivative,
) -> Result<f64> {
    check_height(z0)?;
    if surface.is_reciprocal() && matches!(surface, SurfaceModel::Nondispersive { .. }) {
        return Ok(0.0);
    }
    let w = atom.omega10;
    let s = atom.polarization.sign();
    let gopts = opts.green_options(derivative);
    let integrand = |xi: f64| -> Result<f64> {
        let g = green_imag_sheet(imaginary_sheet(surface, xi)?, xi, z0, &gopts)?;
        Ok((w * g.xx.re + s * xi * g.xy.re) / (w * w + xi * xi))
    };
    // The quadrature driver takes an infallible integrand, so errors are
    // parked here and re-raised afterwards.
    let failure = std::sync::Mutex::new(None);
    let scale = (0.5 / z0).min(w);
    let value = semi_infinite_quad(
        |xi: f64| match integrand(xi) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        },
        scale,
        &opts.quadrature,
    );
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(-atom.mu * atom.mu / PI * value?.value)
}

/// Nonresonant (van der Waals) shift of either state.
///
/// Lower state: −(μ²/π) ∫₀^∞ dξ [ω10 G_xx(iξ) ± ξ G_xy(iξ)]/(ω10² + ξ²).
/// For this dipole the upper state gets exactly the opposite value: both the
/// frequency prefactor and the ordering of the dipole elements flip.
pub fn nonresonant_shift(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    state: AtomState,
) -> Result<f64> {
    nonresonant_shift_with(atom, surface, z0, state, &CasimirOptions::default())
}

pub fn nonresonant_shift_with(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    state: AtomState,
    opts: &CasimirOptions,
) -> Result<f64> {
    let lower = nonresonant_integral(atom, surface, z0, opts, HeightDerivative::Value)?;
    Ok(match state {
        AtomState::Lower => lower,
        AtomState::Upper => -lower,
    })
}

/// Shift contributed by one channel; the resonant channel exists only for
/// the upper state.
pub fn channel_shift(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    state: AtomState,
    channel: Channel,
    opts: &CasimirOptions,
) -> Result<f64> {
    match channel {
        Channel::Nonresonant => nonresonant_shift_with(atom, surface, z0, state, opts),
        Channel::Resonant => {
            if state == AtomState::Lower {
                return Err(Error::domain("the lower state has no resonant shift"));
            }
            Ok(resonant_shift_components(atom, surface, z0, opts)?.total())
        }
    }
}

/// Force −∂(shift)/∂z0 of one channel.
pub fn force_numeric(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    state: AtomState,
    channel: Channel,
    opts: &CasimirOptions,
) -> Result<f64> {
    check_height(z0)?;
    if channel == Channel::Resonant && state == AtomState::Lower {
        return Err(Error::domain("the lower state has no resonant shift"));
    }
    match opts.force_method {
        ForceMethod::Analytic => {
            let d = match channel {
                Channel::Nonresonant => {
                    let lower =
                        nonresonant_integral(atom, surface, z0, opts, HeightDerivative::First)?;
                    if state == AtomState::Upper {
                        -lower
                    } else {
                        lower
                    }
                }
                Channel::Resonant => {
                    let g = green_real_freq_with(
                        surface,
                        atom.omega10,
                        z0,
                        &opts.green_options(HeightDerivative::First),
                    )?;
                    resonant_from_green(atom, g).total()
                }
            };
            Ok(-d)
        }
        ForceMethod::FiniteDifference => {
            let tight = opts.tightened();
            let h = 1e-4 * z0;
            let e = |z: f64| channel_shift(atom, surface, z, state, channel, &tight);
            let d = (-e(z0 + 2.0 * h)? + 8.0 * e(z0 + h)? - 8.0 * e(z0 - h)? + e(z0 - 2.0 * h)?)
                / (12.0 * h);
            Ok(-d)
        }
    }
}

/// Shift and force of one state at one height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpResult {
    pub z0: f64,
    /// Zero for the lower state.
    pub resonant_shift: f64,
    pub nonresonant_shift: f64,
    /// Total force on the state.
    pub force: f64,
}

pub fn evaluate(
    atom: &TwoLevelAtom,
    surface: &SurfaceModel,
    z0: f64,
    state: AtomState,
    opts: &CasimirOptions,
) -> Result<CpResult> {
    let nonresonant_shift = nonresonant_shift_with(atom, surface, z0, state, opts)?;
    let mut force = force_numeric(atom, surface, z0, state, Channel::Nonresonant, opts)?;
    let mut resonant_shift = 0.0;
    if state == AtomState::Upper {
        resonant_shift = resonant_shift_components(atom, surface, z0, opts)?.total();
        force += force_numeric(atom, surface, z0, state, Channel::Resonant, opts)?;
    }
    Ok(CpResult {
        z0,
        resonant_shift,
        nonresonant_shift,
        force,
    })
}

/// Effective Hall coupling seen by the atom: a left-handed dipole over C
/// behaves as a right-handed one over −C.
fn effective_hall(atom: &TwoLevelAtom, chern: i64) -> (f64, f64) {
    let c = atom.polarization.sign() * chern as f64 * ALPHA;
    (c, c / (1.0 + c * c))
}

/// Far-field lower-state shift over the quantised sheet,
/// −(μ²/4πω10)·[Cα/(1+(Cα)²)]·(Cα/z0⁴ + 1/(ω10 z0⁵)).
///
/// Valid for z0 ≫ 1/ω10; not checked.
pub fn farfield_shift(atom: &TwoLevelAtom, chern: i64, z0: f64) -> f64 {
    let (c, h) = effective_hall(atom, chern);
    let w = atom.omega10;
    -atom.mu * atom.mu / (4.0 * PI * w) * h * (c / z0.powi(4) + 1.0 / (w * z0.powi(5)))
}

/// −∂/∂z0 of [`farfield_shift`].
pub fn farfield_force(atom: &TwoLevelAtom, chern: i64, z0: f64) -> f64 {
    let (c, h) = effective_hall(atom, chern);
    let w = atom.omega10;
    -atom.mu * atom.mu / (4.0 * PI * w) * h * (4.0 * c / z0.powi(5) + 5.0 / (w * z0.powi(6)))
}

/// Heights (1/ω10, 5/(4|C|αω10)) between which the far-field force is
/// repulsive, or `None` when it is attractive everywhere.
pub fn repulsion_window(atom: &TwoLevelAtom, chern: i64) -> Option<(f64, f64)> {
    let (c, _) = effective_hall(atom, chern);
    if c < 0.0 {
        let w = atom.omega10;
        Some((
            1.0 / w,
            5.0 / (4.0 * chern.unsigned_abs() as f64 * ALPHA * w),
        ))
    } else {
        None
    }
}

/// Shift in units of the free decay rate, against η = 2ω10 z0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nondimensional {
    pub eta: f64,
    pub delta_omega_tilde: f64,
}

pub fn nondimensionalize(atom: &TwoLevelAtom, shift: f64, z0: f64) -> Nondimensional {
    Nondimensional {
        eta: 2.0 * atom.omega10 * z0,
        delta_omega_tilde: shift / atom.free_decay_rate(),
    }
}

/// Height at which η = 2ω10 z0.
pub fn height_from_eta(atom: &TwoLevelAtom, eta: f64) -> f64 {
    eta / (2.0 * atom.omega10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: Polarization) -> TwoLevelAtom {
        TwoLevelAtom::new(1.0, 1.0, p).unwrap()
    }

    #[test]
    fn atom_validation() {
        assert!(TwoLevelAtom::new(0.0, 1.0, Polarization::Right).is_err());
        assert!(TwoLevelAtom::new(1.0, -1.0, Polarization::Right).is_err());
        assert!(TwoLevelAtom::new(1.0, f64::NAN, Polarization::Left).is_err());
    }

    #[test]
    fn no_sheet_no_shift() {
        let s = SurfaceModel::nondispersive(0);
        let a = atom(Polarization::Right);
        assert_eq!(resonant_shift(&a, &s, 1.0).unwrap(), 0.0);
        assert_eq!(
            nonresonant_shift(&a, &s, 1.0, AtomState::Lower).unwrap(),
            0.0
        );
        let f = force_numeric(
            &a,
            &s,
            1.0,
            AtomState::Lower,
            Channel::Nonresonant,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(f, 0.0);
        assert_eq!(farfield_shift(&a, 0, 3.0), 0.0);
        assert_eq!(repulsion_window(&a, 0), None);
    }

    #[test]
    fn nondimensional_scales() {
        let a = TwoLevelAtom::new(0.3, 2.0, Polarization::Right).unwrap();
        let nd = nondimensionalize(&a, a.free_decay_rate(), 0.25);
        assert_eq!(nd.delta_omega_tilde, 1.0);
        assert_eq!(nd.eta, 1.0);
        assert_eq!(height_from_eta(&a, 1.0), 0.25);
    }

    #[test]
    fn farfield_force_is_derivative() {
        let a = atom(Polarization::Right);
        for (c, z) in [(1, 30.0), (-1, 50.0), (2, 12.0)] {
            let h = 1e-4 * z;
            let e = |z| farfield_shift(&a, c, z);
            let fd =
                -(-e(z + 2.0 * h) + 8.0 * e(z + h) - 8.0 * e(z - h) + e(z - 2.0 * h)) / (12.0 * h);
            let f = farfield_force(&a, c, z);
            assert!((fd - f).abs() < 1e-8 * f.abs());
        }
    }

    #[test]
    fn window_orientation() {
        let r = atom(Polarization::Right);
        let l = atom(Polarization::Left);
        assert!(repulsion_window(&r, -1).is_some());
        assert!(repulsion_window(&r, 1).is_none());
        assert!(repulsion_window(&l, 1).is_some());
        let (lo, hi) = repulsion_window(&r, -2).unwrap();
        assert_eq!(lo, 1.0);
        assert!((hi - 5.0 / (8.0 * ALPHA)).abs() < 1e-12 * hi);
    }

    #[test]
    fn components_add_up() {
        let s = SurfaceModel::nondispersive(-1);
        let a = atom(Polarization::Right);
        let c = resonant_shift_components(&a, &s, 2.0, &Default::default()).unwrap();
        assert_eq!(c.total(), c.term_xx + c.term_xy);
        assert_eq!(resonant_shift(&a, &s, 2.0).unwrap(), c.total());
        let nd = nondimensionalize(&a, c.total(), 2.0).delta_omega_tilde;
        assert!((nd - c.total_nd()).abs() < 1e-15 * nd.abs());
    }

    #[test]
    fn lower_state_has_no_resonant_channel() {
        let s = SurfaceModel::nondispersive(1);
        let a = atom(Polarization::Right);
        let o = CasimirOptions::default();
        assert!(channel_shift(&a, &s, 1.0, AtomState::Lower, Channel::Resonant, &o).is_err());
        assert!(force_numeric(&a, &s, 1.0, AtomState::Lower, Channel::Resonant, &o).is_err());
        let r = evaluate(&a, &s, 1.0, AtomState::Lower, &o).unwrap();
        assert_eq!(r.resonant_shift, 0.0);
    }

    #[test]
    fn upper_is_mirror_of_lower() {
        let s = SurfaceModel::nondispersive(1);
        let a = atom(Polarization::Left);
        let lo = nonresonant_shift(&a, &s, 4.0, AtomState::Lower).unwrap();
        let up = nonresonant_shift(&a, &s, 4.0, AtomState::Upper).unwrap();
        assert_eq!(lo, -up);
    }
}

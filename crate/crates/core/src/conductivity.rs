//! Sheet conductivity of the Chern insulator.
//!
//! Conductances are carried in units of e²/ħ (ħ = 1, frequencies are energies).
//! In these units the quantised Hall conductance C e²/h is C/2π.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::HALL_QUANTUM;
use crate::error::{Error, Result};
use crate::lattice::{bz_grid, matrix_element, Direction, QwzModel};

/// Default real-axis broadening, in units of t.
pub const DEFAULT_BROADENING: f64 = 1e-2;
/// Default mesh for Brillouin-zone integrals.
pub const DEFAULT_GRID: usize = 256;

/// A frequency on the real axis (ω) or the imaginary axis (ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencyArgument {
    Real(f64),
    Imaginary(f64),
}

impl FrequencyArgument {
    pub fn real(omega: f64) -> Result<Self> {
        check_frequency(omega)?;
        Ok(Self::Real(omega))
    }

    pub fn imaginary(xi: f64) -> Result<Self> {
        check_frequency(xi)?;
        Ok(Self::Imaginary(xi))
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::Real(v) | Self::Imaginary(v) => v,
        }
    }

    pub fn is_imaginary(&self) -> bool {
        matches!(self, Self::Imaginary(_))
    }

    /// The frequency as a point in the complex plane: ω or iξ.
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            Self::Real(w) => Complex64::new(w, 0.0),
            Self::Imaginary(xi) => Complex64::new(0.0, xi),
        }
    }
}

fn check_frequency(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "frequency must be finite and >= 0, got {v}"
        )))
    }
}

/// (σ_xx, σ_xy) in units of e²/ħ; σ_yy = σ_xx and σ_yx = −σ_xy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductivityTensor {
    pub xx: Complex64,
    pub xy: Complex64,
}

impl ConductivityTensor {
    pub const ZERO: Self = Self {
        xx: Complex64::new(0.0, 0.0),
        xy: Complex64::new(0.0, 0.0),
    };

    pub fn new(xx: Complex64, xy: Complex64) -> Self {
        Self { xx, xy }
    }

    pub fn yy(&self) -> Complex64 {
        self.xx
    }

    pub fn yx(&self) -> Complex64 {
        -self.xy
    }

    /// Hall conductance in units of e²/h.
    pub fn hall_in_quanta(&self) -> Complex64 {
        self.xy / HALL_QUANTUM
    }

    pub fn without_hall(self) -> Self {
        Self {
            xy: Complex64::new(0.0, 0.0),
            ..self
        }
    }

    /// Two-point Richardson extrapolation h → 0 from samples at h and h/ratio,
    /// assuming the leading error term scales as h^order.
    pub fn richardson(coarse: Self, fine: Self, ratio: f64, order: i32) -> Self {
        let w = ratio.powi(order);
        let ex = |c: Complex64, f: Complex64| (f * w - c) / (w - 1.0);
        Self {
            xx: ex(coarse.xx, fine.xx),
            xy: ex(coarse.xy, fine.xy),
        }
    }
}

/// Quantised limit: σ_xx = 0, σ_xy = C e²/h at every frequency.
pub fn sigma_nondispersive(chern: i64) -> ConductivityTensor {
    ConductivityTensor {
        xx: Complex64::new(0.0, 0.0),
        xy: Complex64::new(chern as f64 * HALL_QUANTUM, 0.0),
    }
}

#[derive(Debug, Clone, Copy)]
struct KPoint {
    /// Upper band energy ε = |d|; the transition energy is 2ε.
    eps: f64,
    /// |⟨−|v_x|+⟩|²
    vx2: f64,
    /// ⟨−|v_x|+⟩ ⟨+|v_y|−⟩
    p: Complex64,
}

/// Per-k band data of a QWZ model on a fixed mesh, reusable for any number of
/// frequencies.
#[derive(Debug, Clone)]
pub struct KuboTable {
    model: QwzModel,
    grid_n: usize,
    points: Vec<KPoint>,
    energy_resolution: f64,
}

/// Conductivity together with sampling diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KuboResult {
    pub sigma: ConductivityTensor,
    /// Largest change of the transition energy 2ε between neighbouring mesh
    /// points.
    pub energy_resolution: f64,
    /// True when the mesh cannot resolve the Lorentzian broadening.
    pub under_resolved: bool,
}

impl KuboTable {
    pub fn new(model: QwzModel, grid_n: usize) -> Result<Self> {
        model.ensure_gapped()?;
        if grid_n < 32 {
            return Err(Error::invalid(
                "grid_n",
                format!("must be >= 32, got {grid_n}"),
            ));
        }
        let ks = bz_grid(grid_n, model.a());
        let rows: Vec<Result<(Vec<KPoint>, f64)>> = ks
            .par_iter()
            .map(|&kx| {
                let mut row = Vec::with_capacity(grid_n);
                let mut max_grad: f64 = 0.0;
                for &ky in &ks {
                    let k = [kx, ky];
                    let (lower, upper) = model.band_states(k)?;
                    let d = model.bloch_vector(k);
                    let eps = d.energy();
                    let vx =
                        matrix_element(&lower, &model.velocity_matrix(k, Direction::X), &upper);
                    let vy =
                        matrix_element(&lower, &model.velocity_matrix(k, Direction::Y), &upper);
                    let dx = model.bloch_derivative(k, Direction::X);
                    let dy = model.bloch_derivative(k, Direction::Y);
                    let dv = d.as_array();
                    let gx = (dv[0] * dx[0] + dv[1] * dx[1] + dv[2] * dx[2]) / eps;
                    let gy = (dv[0] * dy[0] + dv[1] * dy[1] + dv[2] * dy[2]) / eps;
                    max_grad = max_grad.max(gx.hypot(gy));
                    row.push(KPoint {
                        eps,
                        vx2: vx.norm_sqr(),
                        p: vx * vy.conj(),
                    });
                }
                Ok((row, max_grad))
            })
            .collect();

        let mut points = Vec::with_capacity(grid_n * grid_n);
        let mut max_grad: f64 = 0.0;
        for row in rows {
            let (row, g) = row?;
            points.extend(row);
            max_grad = max_grad.max(g);
        }
        let dk = 2.0 * PI / (grid_n as f64 * model.a());
        Ok(Self {
            model,
            grid_n,
            points,
            energy_resolution: 2.0 * max_grad * dk,
        })
    }

    pub fn model(&self) -> &QwzModel {
        &self.model
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn energy_resolution(&self) -> f64 {
        self.energy_resolution
    }

    // Row sums are formed independently and then added in row order, so the
    // result does not depend on how rayon schedules the rows.
    fn bz_sum<F>(&self, f: F) -> (Complex64, Complex64)
    where
        F: Fn(&KPoint) -> (Complex64, Complex64) + Sync,
    {
        let zero = Complex64::new(0.0, 0.0);
        let rows: Vec<(Complex64, Complex64)> = self
            .points
            .par_chunks(self.grid_n)
            .map(|row| {
                row.iter().fold((zero, zero), |(sxx, sxy), kp| {
                    let (a, b) = f(kp);
                    (sxx + a, sxy + b)
                })
            })
            .collect();
        let (sxx, sxy) = rows
            .into_iter()
            .fold((zero, zero), |(a, b), (c, d)| (a + c, b + d));
        let area = (self.grid_n * self.grid_n) as f64 * self.model.a() * self.model.a();
        (sxx / area, sxy / area)
    }

    /// T = 0 interband Kubo conductivity.
    ///
    /// σ_ab(ω) = (i/A) Σ_k (1/2ε) [ v^a₋₊ v^b₊₋ / (ω + iγ − 2ε) + v^a₊₋ v^b₋₊ / (ω + iγ + 2ε) ]
    ///
    /// On the imaginary axis ω + iγ is replaced by iξ and the broadening is
    /// ignored; the result is then exactly real.
    pub fn sigma(&self, freq: FrequencyArgument, broadening: f64) -> Result<KuboResult> {
        check_frequency(freq.value())?;
        let sigma = match freq {
            FrequencyArgument::Real(omega) => {
                if !(broadening > 0.0) || !broadening.is_finite() {
                    return Err(Error::invalid(
                        "broadening",
                        format!("must be finite and > 0, got {broadening}"),
                    ));
                }
                let z = Complex64::new(omega, broadening);
                let i = Complex64::new(0.0, 1.0);
                let (xx, xy) = self.bz_sum(|kp| {
                    let two_e = 2.0 * kp.eps;
                    let res = 1.0 / (z - two_e);
                    let anti = 1.0 / (z + two_e);
                    let pre = i / two_e;
                    (
                        pre * kp.vx2 * (res + anti),
                        pre * (kp.p * res + kp.p.conj() * anti),
                    )
                });
                ConductivityTensor { xx, xy }
            }
            FrequencyArgument::Imaginary(xi) => {
                let (xx, xy) = self.bz_sum(|kp| {
                    let e = kp.eps;
                    let denom = xi * xi + 4.0 * e * e;
                    (
                        Complex64::new(kp.vx2 * xi / (e * denom), 0.0),
                        Complex64::new(
                            (2.0 * xi * kp.p.re + 4.0 * e * kp.p.im) / (2.0 * e * denom),
                            0.0,
                        ),
                    )
                });
                ConductivityTensor {
                    xx: Complex64::new(xx.re, 0.0),
                    xy: Complex64::new(xy.re, 0.0),
                }
            }
        };
        Ok(KuboResult {
            sigma,
            energy_resolution: self.energy_resolution,
            under_resolved: !freq.is_imaginary() && self.energy_resolution > broadening,
        })
    }

    /// lim_{ξ→0} σ_xx(iξ)/ξ, the static in-plane polarisability of the sheet.
    pub fn static_xx_slope(&self) -> f64 {
        self.bz_sum(|kp| {
            let e = kp.eps;
            (
                Complex64::new(kp.vx2 / (4.0 * e * e * e), 0.0),
                Complex64::new(0.0, 0.0),
            )
        })
        .0
        .re
    }
}

/// Kubo conductivity of `model` at one frequency on a `grid_n`² mesh.
pub fn kubo_sigma(
    model: &QwzModel,
    freq: FrequencyArgument,
    broadening: f64,
    grid_n: usize,
) -> Result<KuboResult> {
    KuboTable::new(*model, grid_n)?.sigma(freq, broadening)
}

/// Kubo conductivity at imaginary frequency iξ (real-valued).
pub fn sigma_imag_axis(model: &QwzModel, xi: f64, grid_n: usize) -> Result<ConductivityTensor> {
    let freq = FrequencyArgument::imaginary(xi)?;
    Ok(KuboTable::new(*model, grid_n)?
        .sigma(freq, DEFAULT_BROADENING)?
        .sigma)
}

/// Real-axis conductivity extrapolated to vanishing broadening from the pair
/// (γ, γ/2).
pub fn kubo_sigma_extrapolated(
    table: &KuboTable,
    omega: f64,
    broadening: f64,
    order: i32,
) -> Result<ConductivityTensor> {
    let freq = FrequencyArgument::real(omega)?;
    let coarse = table.sigma(freq, broadening)?.sigma;
    let fine = table.sigma(freq, 0.5 * broadening)?.sigma;
    Ok(ConductivityTensor::richardson(coarse, fine, 2.0, order))
}

/// A QWZ sheet with its band data precomputed.
#[derive(Debug, Clone)]
pub struct DispersiveSurface {
    table: Arc<KuboTable>,
    broadening: f64,
    hall: bool,
}

impl DispersiveSurface {
    pub fn new(model: QwzModel, broadening: f64, grid_n: usize) -> Result<Self> {
        if !(broadening > 0.0) || !broadening.is_finite() {
            return Err(Error::invalid(
                "broadening",
                format!("must be finite and > 0, got {broadening}"),
            ));
        }
        Ok(Self {
            table: Arc::new(KuboTable::new(model, grid_n)?),
            broadening,
            hall: true,
        })
    }

    /// The same sheet with its Hall response switched off.
    pub fn reciprocal(&self) -> Self {
        Self {
            hall: false,
            ..self.clone()
        }
    }

    pub fn table(&self) -> &KuboTable {
        &self.table
    }

    pub fn model(&self) -> &QwzModel {
        self.table.model()
    }

    pub fn broadening(&self) -> f64 {
        self.broadening
    }

    fn finish(&self, s: ConductivityTensor) -> ConductivityTensor {
        if self.hall {
            s
        } else {
            s.without_hall()
        }
    }
}

/// The conducting sheet: either the microscopic QWZ model or its quantised
/// nondispersive limit.
#[derive(Debug, Clone)]
pub enum SurfaceModel {
    Dispersive(DispersiveSurface),
    Nondispersive { chern: i64 },
}

impl SurfaceModel {
    pub fn nondispersive(chern: i64) -> Self {
        Self::Nondispersive { chern }
    }

    pub fn dispersive(model: QwzModel, broadening: f64, grid_n: usize) -> Result<Self> {
        Ok(Self::Dispersive(DispersiveSurface::new(
            model, broadening, grid_n,
        )?))
    }

    pub fn sigma(&self, freq: FrequencyArgument) -> Result<ConductivityTensor> {
        match self {
            Self::Nondispersive { chern } => Ok(sigma_nondispersive(*chern)),
            Self::Dispersive(s) => Ok(s.finish(s.table.sigma(freq, s.broadening)?.sigma)),
        }
    }

    pub fn sigma_real(&self, omega: f64) -> Result<ConductivityTensor> {
        self.sigma(FrequencyArgument::real(omega)?)
    }

    pub fn sigma_imag(&self, xi: f64) -> Result<ConductivityTensor> {
        self.sigma(FrequencyArgument::imaginary(xi)?)
    }

    /// lim_{ξ→0} σ_xx(iξ)/ξ; zero for the nondispersive sheet.
    pub fn static_xx_slope(&self) -> f64 {
        match self {
            Self::Nondispersive { .. } => 0.0,
            Self::Dispersive(s) => s.table.static_xx_slope(),
        }
    }

    /// True when σ_xy vanishes identically.
    pub fn is_reciprocal(&self) -> bool {
        match self {
            Self::Nondispersive { chern } => *chern == 0,
            Self::Dispersive(s) => !s.hall,
        }
    }
}

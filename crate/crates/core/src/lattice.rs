//! Qi-Wu-Zhang two-band lattice model.
//!
//! H(k) = d(k)·σ with d = (t sin kₓa, t sin k_ya, t cos kₓa + t cos k_ya + u).
//! Everything here uses ħ = 1, so velocities are ∂H/∂k and carry units of
//! energy × length.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Spinor in the σ_z basis.
pub type Spinor = [Complex64; 2];

/// 2×2 complex matrix, row major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Relative gap below which a model counts as gapless.
const GAP_TOLERANCE: f64 = 1e-12;

/// Tight-binding parameters of the QWZ Chern insulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QwzModel {
    t: f64,
    u: f64,
    a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

/// Bloch vector d(k); the bands are ±|d|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub d_x: f64,
    pub d_y: f64,
    pub d_z: f64,
}

impl BlochVector {
    pub fn as_array(&self) -> [f64; 3] {
        [self.d_x, self.d_y, self.d_z]
    }

    /// Upper band energy |d|.
    pub fn energy(&self) -> f64 {
        (self.d_x * self.d_x + self.d_y * self.d_y + self.d_z * self.d_z).sqrt()
    }

    /// (ε₋, ε₊) = (−|d|, +|d|).
    pub fn band_energies(&self) -> (f64, f64) {
        let e = self.energy();
        (-e, e)
    }
}

impl Default for QwzModel {
    /// u = t = 1, a = 1.
    fn default() -> Self {
        Self {
            t: 1.0,
            u: 1.0,
            a: 1.0,
        }
    }
}

impl QwzModel {
    pub fn new(t: f64, u: f64, a: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::invalid(
                "t",
                format!("hopping must be finite and > 0, got {t}"),
            ));
        }
        if !u.is_finite() {
            return Err(Error::invalid(
                "u",
                format!("on-site energy must be finite, got {u}"),
            ));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::invalid(
                "a",
                format!("lattice constant must be finite and > 0, got {a}"),
            ));
        }
        Ok(Self { t, u, a })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The same model with u → −u, which flips the Chern number.
    pub fn mirrored(&self) -> Self {
        Self {
            u: -self.u,
            ..*self
        }
    }

    /// Band gap 2·min|d(k)|.
    ///
    /// |d|² is bilinear in (cos kₓa, cos k_ya), so its minimum sits on one of
    /// the four time-reversal-invariant momenta.
    pub fn gap(&self) -> f64 {
        let m = self.u / self.t;
        let min = (m + 2.0).abs().min((m - 2.0).abs()).min(m.abs());
        2.0 * self.t * min
    }

    pub fn is_gapped(&self) -> bool {
        self.gap() > GAP_TOLERANCE * self.t
    }

    pub fn ensure_gapped(&self) -> Result<()> {
        if self.is_gapped() {
            Ok(())
        } else {
            Err(Error::BandTouching {
                u_over_t: self.u / self.t,
            })
        }
    }

    pub fn bloch_vector(&self, k: [f64; 2]) -> BlochVector {
        let (sx, cx) = (k[0] * self.a).sin_cos();
        let (sy, cy) = (k[1] * self.a).sin_cos();
        BlochVector {
            d_x: self.t * sx,
            d_y: self.t * sy,
            d_z: self.t * cx + self.t * cy + self.u,
        }
    }

    /// ∂d/∂k along `direction`.
    pub fn bloch_derivative(&self, k: [f64; 2], direction: Direction) -> [f64; 3] {
        let ta = self.t * self.a;
        match direction {
            Direction::X => {
                let (s, c) = (k[0] * self.a).sin_cos();
                [ta * c, 0.0, -ta * s]
            }
            Direction::Y => {
                let (s, c) = (k[1] * self.a).sin_cos();
                [0.0, ta * c, -ta * s]
            }
        }
    }

    pub fn hamiltonian(&self, k: [f64; 2]) -> Matrix2 {
        pauli_matrix(self.bloch_vector(k).as_array())
    }

    /// Velocity operator ∂H/∂k_a in the σ_z basis.
    pub fn velocity_matrix(&self, k: [f64; 2], direction: Direction) -> Matrix2 {
        pauli_matrix(self.bloch_derivative(k, direction))
    }

    /// Lower and upper band eigenvectors at `k`.
    ///
    /// The gauge switches between two smooth patches depending on the sign of
    /// d_z; only gauge-invariant combinations are used downstream.
    pub fn band_states(&self, k: [f64; 2]) -> Result<(Spinor, Spinor)> {
        let d = self.bloch_vector(k);
        let e = d.energy();
        if !(e > GAP_TOLERANCE * self.t) {
            return Err(Error::domain(format!(
                "degenerate point k = ({}, {}): |d| = {e}",
                k[0], k[1]
            )));
        }
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let (lower, upper) = if d.d_z >= 0.0 {
            let n = (2.0 * e * (e + d.d_z)).sqrt();
            (
                [c(-d.d_x / n, d.d_y / n), c((e + d.d_z) / n, 0.0)],
                [c((e + d.d_z) / n, 0.0), c(d.d_x / n, d.d_y / n)],
            )
        } else {
            let n = (2.0 * e * (e - d.d_z)).sqrt();
            (
                [c((e - d.d_z) / n, 0.0), c(-d.d_x / n, -d.d_y / n)],
                [c(d.d_x / n, -d.d_y / n), c((e - d.d_z) / n, 0.0)],
            )
        };
        Ok((lower, upper))
    }

    /// Berry curvature of the occupied band, Ω = −½ d̂·(∂ₓd̂ × ∂_yd̂).
    ///
    /// With this sign (1/2π)∫_BZ Ω d²k equals the Chern number returned by
    /// [`chern_number`](Self::chern_number), and the DC Hall conductance is
    /// C e²/h.
    pub fn berry_curvature(&self, k: [f64; 2]) -> Result<f64> {
        let d = self.bloch_vector(k);
        let e = d.energy();
        if !(e > GAP_TOLERANCE * self.t) {
            return Err(Error::domain(format!(
                "Berry curvature undefined at degenerate point k = ({}, {})",
                k[0], k[1]
            )));
        }
        let dx = self.bloch_derivative(k, Direction::X);
        let dy = self.bloch_derivative(k, Direction::Y);
        let triple = dot(d.as_array(), cross(dx, dy));
        Ok(-0.5 * triple / (e * e * e))
    }

    /// Trapezoid-rule estimate of (1/2π)∫_BZ Ω d²k on an n×n periodic mesh.
    pub fn berry_flux(&self, grid_n: usize) -> Result<f64> {
        self.ensure_gapped()?;
        if grid_n < 8 {
            return Err(Error::invalid(
                "grid_n",
                format!("must be >= 8, got {grid_n}"),
            ));
        }
        let ks = bz_grid(grid_n, self.a);
        let dk = 2.0 * PI / (grid_n as f64 * self.a);
        let mut total = 0.0;
        for &kx in &ks {
            let mut row = 0.0;
            for &ky in &ks {
                row += self.berry_curvature([kx, ky])?;
            }
            total += row;
        }
        Ok(total * dk * dk / (2.0 * PI))
    }

    /// Lattice Chern number of the occupied band from plaquette phases.
    pub fn chern_number(&self, grid_n: usize) -> Result<i64> {
        self.ensure_gapped()?;
        let states = self.lower_band_states(grid_n)?;
        chern_from_states(grid_n, &states)
    }

    /// Occupied-band eigenvectors on the n×n mesh, row-major in (kₓ, k_y).
    pub fn lower_band_states(&self, grid_n: usize) -> Result<Vec<Spinor>> {
        if grid_n < 8 {
            return Err(Error::invalid(
                "grid_n",
                format!("must be >= 8, got {grid_n}"),
            ));
        }
        let ks = bz_grid(grid_n, self.a);
        let mut states = Vec::with_capacity(grid_n * grid_n);
        for &kx in &ks {
            for &ky in &ks {
                states.push(self.band_states([kx, ky])?.0);
            }
        }
        Ok(states)
    }
}

/// Uniform periodic mesh of the Brillouin zone, kᵢ ∈ (−π/a, π/a].
pub fn bz_grid(n: usize, a: f64) -> Vec<f64> {
    (0..n)
        .map(|i| (-PI + 2.0 * PI * (i + 1) as f64 / n as f64) / a)
        .collect()
}

/// Chern number from occupied-band states on an n×n periodic mesh.
///
/// Each plaquette contributes the phase of the product of normalised link
/// variables around it; the phases sum to 2π × integer for any gauge.
pub fn chern_from_states(grid_n: usize, states: &[Spinor]) -> Result<i64> {
    if states.len() != grid_n * grid_n {
        return Err(Error::invalid(
            "states",
            format!("expected {} states, got {}", grid_n * grid_n, states.len()),
        ));
    }
    let idx = |i: usize, j: usize| (i % grid_n) * grid_n + (j % grid_n);
    let link = |p: usize, q: usize| {
        let z = inner(&states[p], &states[q]);
        z / z.norm()
    };
    let mut flux = 0.0;
    for i in 0..grid_n {
        for j in 0..grid_n {
            let p00 = idx(i, j);
            let p10 = idx(i + 1, j);
            let p11 = idx(i + 1, j + 1);
            let p01 = idx(i, j + 1);
            let loop_product = link(p00, p10) * link(p10, p11) * link(p11, p01) * link(p01, p00);
            flux += loop_product.arg();
        }
    }
    let c = flux / (2.0 * PI);
    let rounded = c.round();
    if (c - rounded).abs() > 1e-6 {
        return Err(Error::domain(format!(
            "plaquette flux {c} is not an integer; mesh too coarse"
        )));
    }
    Ok(rounded as i64)
}

/// ⟨a|b⟩
pub fn inner(a: &Spinor, b: &Spinor) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// ⟨a|M|b⟩
pub fn matrix_element(a: &Spinor, m: &Matrix2, b: &Spinor) -> Complex64 {
    let mb = [
        m[0][0] * b[0] + m[0][1] * b[1],
        m[1][0] * b[0] + m[1][1] * b[1],
    ];
    inner(a, &mb)
}

fn pauli_matrix(v: [f64; 3]) -> Matrix2 {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        [c(v[2], 0.0), c(v[0], -v[1])],
        [c(v[0], v[1]), c(-v[2], 0.0)],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

//! TOML run configuration.
//!
//! ```toml
//! [surface.dispersive]      # or [surface.nondispersive] with C = -1
//! t = 1.0
//! u = 1.0
//! a = 1.0
//! broadening = 0.01
//! grid_n = 256
//!
//! [atom]
//! omega10 = 1.9             # or transition_wavelength = 707.202e-9 (metres)
//! mu = 1.0
//! polarization = "right"
//!
//! [sweep]
//! variable = "eta"          # z0 | eta | omega | xi
//! min = 1.0
//! max = 30.0
//! points = 600
//! spacing = "linear"        # linear | log
//!
//! [output]
//! path = "shift.csv"
//! format = "csv"
//!
//! [quadrature]
//! rel_tol = 1e-9
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chernpolder_core::casimir::{
    AtomState, CasimirOptions, ForceMethod, Polarization, TwoLevelAtom,
};
use chernpolder_core::{QuadratureSpec, QwzModel, SurfaceModel};
use serde::Deserialize;

use crate::si::SiScale;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceConfig,
    pub atom: Option<AtomConfig>,
    pub sweep: SweepConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub dispersive: Option<DispersiveConfig>,
    pub nondispersive: Option<NondispersiveConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersiveConfig {
    #[serde(default = "one")]
    pub t: f64,
    #[serde(default = "one")]
    pub u: f64,
    #[serde(default = "one")]
    pub a: f64,
    #[serde(default = "default_broadening")]
    pub broadening: f64,
    #[serde(default = "default_grid")]
    pub grid_n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondispersiveConfig {
    #[serde(rename = "C")]
    pub chern: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    /// Vacuum transition wavelength in metres. Lengths are then measured in
    /// units of λ/2π and energies in ħω10.
    pub transition_wavelength: Option<f64>,
    /// Transition frequency in the surface's energy unit.
    pub omega10: Option<f64>,
    /// Dipole moment; in units of e·a₀ when `transition_wavelength` is given.
    #[serde(default = "one")]
    pub mu: f64,
    #[serde(default)]
    pub polarization: PolarizationConfig,
    pub state: Option<StateConfig>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum PolarizationConfig {
    #[default]
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum StateConfig {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Z0,
    Eta,
    Omega,
    Xi,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ForceMethodConfig {
    #[default]
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    /// Tolerance of the wavevector integrals nested inside the ξ integral.
    pub inner_rel_tol: Option<f64>,
    #[serde(default)]
    pub steepest_descent: bool,
    #[serde(default)]
    pub force_method: ForceMethodConfig,
}

fn one() -> f64 {
    1.0
}

fn default_broadening() -> f64 {
    chernpolder_core::conductivity::DEFAULT_BROADENING
}

fn default_grid() -> usize {
    chernpolder_core::conductivity::DEFAULT_GRID
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.surface.dispersive, &self.surface.nondispersive) {
            (Some(_), Some(_)) => bail!("surface: give exactly one of [surface.dispersive] or [surface.nondispersive], not both"),
            (None, None) => bail!("surface: missing [surface.dispersive] or [surface.nondispersive]"),
            _ => {}
        }
        self.sweep.validate()?;
        if let Some(a) = &self.atom {
            match (a.transition_wavelength, a.omega10) {
                (Some(_), Some(_)) => {
                    bail!("atom: give transition_wavelength or omega10, not both")
                }
                (None, None) => bail!("atom: missing transition_wavelength or omega10"),
                (Some(l), None) if !(l > 0.0 && l.is_finite()) => {
                    bail!("atom.transition_wavelength: must be > 0, got {l}")
                }
                (Some(_), None) if self.surface.dispersive.is_some() => {
                    bail!("atom.transition_wavelength: SI atoms need a nondispersive surface; give omega10 in units of t instead")
                }
                _ => {}
            }
        }
        self.casimir_options()?;
        Ok(())
    }

    pub fn surface(&self) -> Result<SurfaceModel> {
        if let Some(n) = &self.surface.nondispersive {
            return Ok(SurfaceModel::nondispersive(n.chern));
        }
        let d = self
            .surface
            .dispersive
            .as_ref()
            .context("surface: not configured")?;
        let model = QwzModel::new(d.t, d.u, d.a)?;
        Ok(SurfaceModel::dispersive(model, d.broadening, d.grid_n)?)
    }

    pub fn dispersive_model(&self) -> Result<QwzModel> {
        let d = self
            .surface
            .dispersive
            .as_ref()
            .context("surface: this command needs [surface.dispersive]")?;
        Ok(QwzModel::new(d.t, d.u, d.a)?)
    }

    /// Chern number of the configured surface.
    pub fn chern(&self) -> Result<i64> {
        match (&self.surface.nondispersive, &self.surface.dispersive) {
            (Some(n), _) => Ok(n.chern),
            (None, Some(_)) => Ok(self.dispersive_model()?.chern_number(64)?),
            (None, None) => bail!("surface: not configured"),
        }
    }

    pub fn atom_config(&self) -> Result<&AtomConfig> {
        self.atom
            .as_ref()
            .context("atom: this command needs an [atom] table")
    }

    pub fn atom(&self) -> Result<TwoLevelAtom> {
        let a = self.atom_config()?;
        let polarization = match a.polarization {
            PolarizationConfig::Right => Polarization::Right,
            PolarizationConfig::Left => Polarization::Left,
        };
        let (omega10, mu) = match (a.transition_wavelength, a.omega10) {
            (Some(l), _) => {
                let scale = SiScale::from_wavelength(l)?;
                (1.0, scale.dipole_from_atomic_units(a.mu))
            }
            (None, Some(w)) => (w, a.mu),
            (None, None) => bail!("atom: missing transition_wavelength or omega10"),
        };
        Ok(TwoLevelAtom::new(mu, omega10, polarization)?)
    }

    /// SI conversion when the atom is given by its wavelength.
    pub fn si_scale(&self) -> Result<Option<SiScale>> {
        match self.atom.as_ref().and_then(|a| a.transition_wavelength) {
            Some(l) => Ok(Some(SiScale::from_wavelength(l)?)),
            None => Ok(None),
        }
    }

    pub fn state(&self, default: AtomState) -> AtomState {
        match self.atom.as_ref().and_then(|a| a.state) {
            Some(StateConfig::Upper) => AtomState::Upper,
            Some(StateConfig::Lower) => AtomState::Lower,
            None => default,
        }
    }

    pub fn quadrature_spec(&self) -> Result<QuadratureSpec> {
        self.quadrature.spec()
    }

    pub fn casimir_options(&self) -> Result<CasimirOptions> {
        self.quadrature.casimir_options()
    }

    /// Sweep abscissae in configuration order.
    pub fn sweep_values(&self) -> Vec<f64> {
        self.sweep.values()
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            bail!(
                "sweep: need finite min < max, got min = {}, max = {}",
                self.min,
                self.max
            );
        }
        if self.points < 2 {
            bail!("sweep.points: need at least 2, got {}", self.points);
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            bail!("sweep: log spacing needs min > 0, got {}", self.min);
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => {
                chernpolder_core::analysis::linspace(self.min, self.max, self.points)
            }
            Spacing::Log => chernpolder_core::analysis::logspace(self.min, self.max, self.points),
        }
    }
}

impl QuadratureConfig {
    pub fn spec(&self) -> Result<QuadratureSpec> {
        let mut spec = QuadratureSpec::default();
        if let Some(v) = self.rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            spec.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            spec.max_subdivisions = v;
        }
        spec.validate().context("quadrature")?;
        Ok(spec)
    }

    pub fn casimir_options(&self) -> Result<CasimirOptions> {
        let mut opts = CasimirOptions::default();
        let spec = self.spec()?;
        opts.quadrature = spec;
        opts.green = QuadratureSpec {
            rel_tol: self.inner_rel_tol.unwrap_or(opts.green.rel_tol),
            ..spec
        };
        opts.green.validate().context("quadrature.inner_rel_tol")?;
        opts.steepest_descent = self.steepest_descent;
        opts.force_method = match self.force_method {
            ForceMethodConfig::Analytic => ForceMethod::Analytic,
            ForceMethodConfig::FiniteDifference => ForceMethod::FiniteDifference,
        };
        Ok(opts)
    }
}

/// Optional overrides for `figure` runs; every table may be omitted.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureConfig {
    pub sweep: Option<SweepConfig>,
    pub lattice: Option<LatticeOverrides>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeOverrides {
    pub broadening: Option<f64>,
    pub grid_n: Option<usize>,
}

impl FigureConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: Self =
            toml::from_str(&text).with_context(|| format!("in config {}", path.display()))?;
        if let Some(s) = &config.sweep {
            s.validate()?;
        }
        config.quadrature.casimir_options()?;
        Ok(config)
    }

    pub fn broadening(&self) -> f64 {
        self.lattice
            .as_ref()
            .and_then(|l| l.broadening)
            .unwrap_or_else(default_broadening)
    }

    pub fn grid_n(&self) -> usize {
        self.lattice
            .as_ref()
            .and_then(|l| l.grid_n)
            .unwrap_or_else(default_grid)
    }
}

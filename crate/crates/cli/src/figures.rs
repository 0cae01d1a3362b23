//! Data behind the published figures, with their stated parameters.
//!
//! * `fig1`: conductivity of the u = t and u = −t lattice models, one file
//!   per component (Re/Im of σ_xx and σ_xy) against ħω/t ∈ [0, 8].
//! * `fig2a`: nondimensional resonant shift of a right-polarised atom against
//!   η ∈ [1, 30] for C = ±1 (u = ±t) and ω10 ∈ {t, 1.9t}.
//! * `fig2b`: the C = −1, ω10 = 1.9t shift split into its xx and xy terms.

use std::str::FromStr;

use anyhow::{bail, Result};
use chernpolder_core::casimir::{
    height_from_eta, resonant_shift_components, CasimirOptions, Polarization, TwoLevelAtom,
};
use chernpolder_core::{FrequencyArgument, KuboTable, QwzModel, SurfaceModel};

use crate::config::{FigureConfig, Spacing, SweepConfig, SweepVariable};
use crate::output::{fill_rows, num, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2a,
    Fig2b,
}

impl FromStr for Figure {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2a" => Ok(Self::Fig2a),
            "fig2b" => Ok(Self::Fig2b),
            other => bail!("unknown figure `{other}`; expected fig1, fig2a or fig2b"),
        }
    }
}

impl Figure {
    pub fn default_sweep(self) -> SweepConfig {
        match self {
            Self::Fig1 => SweepConfig {
                variable: SweepVariable::Omega,
                min: 0.0,
                max: 8.0,
                points: 161,
                spacing: Spacing::Linear,
            },
            Self::Fig2a | Self::Fig2b => SweepConfig {
                variable: SweepVariable::Eta,
                min: 1.0,
                max: 30.0,
                points: 600,
                spacing: Spacing::Linear,
            },
        }
    }
}

/// Named CSV files of one figure.
pub fn generate(figure: Figure, config: &FigureConfig) -> Result<Vec<(String, Table)>> {
    let sweep = config
        .sweep
        .clone()
        .unwrap_or_else(|| figure.default_sweep());
    let expected = figure.default_sweep().variable;
    if sweep.variable != expected {
        bail!(
            "sweep.variable: {figure:?} sweeps {expected:?}, got {:?}",
            sweep.variable
        );
    }
    let values = sweep.values();
    let opts = config.quadrature.casimir_options()?;
    match figure {
        Figure::Fig1 => fig1(&values, config),
        Figure::Fig2a => fig2a(&values, config, &opts),
        Figure::Fig2b => fig2b(&values, config, &opts),
    }
}

fn qwz(u: f64) -> Result<QwzModel> {
    Ok(QwzModel::new(1.0, u, 1.0)?)
}

fn fig1(values: &[f64], config: &FigureConfig) -> Result<Vec<(String, Table)>> {
    let plus = KuboTable::new(qwz(1.0)?, config.grid_n())?;
    let minus = KuboTable::new(qwz(-1.0)?, config.grid_n())?;
    let eta = config.broadening();
    let mut all = Table::new(["omega_over_t"]);
    fill_rows(&mut all, values, |w| {
        let f = FrequencyArgument::real(w)?;
        let a = plus.sigma(f, eta)?.sigma;
        let b = minus.sigma(f, eta)?.sigma;
        Ok([
            w, a.xx.re, b.xx.re, a.xx.im, b.xx.im, a.xy.re, b.xy.re, a.xy.im, b.xy.im,
        ]
        .iter()
        .map(|&v| num(v))
        .collect())
    });
    let panels = [
        "fig1a_re_sigma_xx",
        "fig1b_im_sigma_xx",
        "fig1c_re_sigma_xy",
        "fig1d_im_sigma_xy",
    ];
    Ok(panels
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut t = Table::new(["omega_over_t", "u_plus_t", "u_minus_t"]);
            t.rows = all
                .rows
                .iter()
                .map(|r| vec![r[0].clone(), r[1 + 2 * i].clone(), r[2 + 2 * i].clone()])
                .collect();
            (format!("{name}.csv"), t)
        })
        .collect())
}

fn right_atom(omega10: f64) -> Result<TwoLevelAtom> {
    Ok(TwoLevelAtom::new(1.0, omega10, Polarization::Right)?)
}

fn fig2a(
    values: &[f64],
    config: &FigureConfig,
    opts: &CasimirOptions,
) -> Result<Vec<(String, Table)>> {
    let plus = SurfaceModel::dispersive(qwz(1.0)?, config.broadening(), config.grid_n())?;
    let minus = SurfaceModel::dispersive(qwz(-1.0)?, config.broadening(), config.grid_n())?;
    let series = [
        ("c_plus_1_omega_1", &plus, right_atom(1.0)?),
        ("c_plus_1_omega_1_9", &plus, right_atom(1.9)?),
        ("c_minus_1_omega_1", &minus, right_atom(1.0)?),
        ("c_minus_1_omega_1_9", &minus, right_atom(1.9)?),
    ];
    let mut header = vec!["eta"];
    header.extend(series.iter().map(|s| s.0));
    let mut t = Table::new(header);
    fill_rows(&mut t, values, |eta| {
        let mut row = vec![num(eta)];
        for (_, surface, atom) in &series {
            let z0 = height_from_eta(atom, eta);
            row.push(num(
                resonant_shift_components(atom, surface, z0, opts)?.total_nd()
            ));
        }
        Ok(row)
    });
    Ok(vec![("fig2a.csv".to_string(), t)])
}

fn fig2b(
    values: &[f64],
    config: &FigureConfig,
    opts: &CasimirOptions,
) -> Result<Vec<(String, Table)>> {
    let surface = SurfaceModel::dispersive(qwz(-1.0)?, config.broadening(), config.grid_n())?;
    let atom = right_atom(1.9)?;
    let mut t = Table::new(["eta", "total", "term_xx", "term_xy"]);
    fill_rows(&mut t, values, |eta| {
        let c = resonant_shift_components(&atom, &surface, height_from_eta(&atom, eta), opts)?;
        Ok(vec![
            num(eta),
            num(c.total_nd()),
            num(c.term_xx_nd),
            num(c.term_xy_nd),
        ])
    });
    Ok(vec![("fig2b.csv".to_string(), t)])
}

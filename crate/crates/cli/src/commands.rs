//! The `conductivity`, `shift` and `force` sweeps.

use anyhow::{bail, Result};
use chernpolder_core::casimir::{
    farfield_force, force_numeric, height_from_eta, nonresonant_shift_with,
    resonant_shift_components, AtomState, Channel, TwoLevelAtom,
};
use chernpolder_core::{FrequencyArgument, KuboTable};

use crate::config::{RunConfig, SweepVariable};
use crate::output::{fill_rows, num, Table};

/// Height and η of one sweep value.
fn height(atom: &TwoLevelAtom, variable: SweepVariable, value: f64) -> Result<(f64, f64)> {
    match variable {
        SweepVariable::Z0 => Ok((value, 2.0 * atom.omega10() * value)),
        SweepVariable::Eta => Ok((height_from_eta(atom, value), value)),
        other => bail!("sweep.variable: {other:?} is not a height; use z0 or eta"),
    }
}

/// Complex conductivity tensor along ħω/t or ξ/t.
pub fn conductivity(config: &RunConfig) -> Result<Table> {
    let model = config.dispersive_model()?;
    let d = config
        .surface
        .dispersive
        .as_ref()
        .expect("checked by dispersive_model");
    let (column, imaginary) = match config.sweep.variable {
        SweepVariable::Omega => ("omega_over_t", false),
        SweepVariable::Xi => ("xi_over_t", true),
        other => bail!("sweep.variable: conductivity sweeps omega or xi, got {other:?}"),
    };
    let table = KuboTable::new(model, d.grid_n)?;
    let mut out = Table::new([
        column,
        "re_sigma_xx",
        "im_sigma_xx",
        "re_sigma_xy",
        "im_sigma_xy",
    ]);
    let t = model.t();
    fill_rows(&mut out, &config.sweep_values(), |v| {
        let freq = if imaginary {
            FrequencyArgument::imaginary(v * t)?
        } else {
            FrequencyArgument::real(v * t)?
        };
        let s = table.sigma(freq, d.broadening)?.sigma;
        Ok(vec![
            num(v),
            num(s.xx.re),
            num(s.xx.im),
            num(s.xy.re),
            num(s.xy.im),
        ])
    });
    Ok(out)
}

/// Nondimensional resonant and nonresonant shifts against η = 2ω10 z0.
pub fn shift(config: &RunConfig) -> Result<Table> {
    let atom = config.atom()?;
    let surface = config.surface()?;
    let opts = config.casimir_options()?;
    let state = config.state(AtomState::Upper);
    let variable = config.sweep.variable;
    height(&atom, variable, 1.0)?;
    let gamma = atom.free_decay_rate();
    let mut out = Table::new([
        "eta",
        "z0",
        "resonant_shift_nd",
        "term_xx_nd",
        "term_xy_nd",
        "nonresonant_shift_nd",
    ]);
    fill_rows(&mut out, &config.sweep_values(), |v| {
        let (z0, eta) = height(&atom, variable, v)?;
        let (total, xx, xy) = match state {
            AtomState::Upper => {
                let c = resonant_shift_components(&atom, &surface, z0, &opts)?;
                (c.total_nd(), c.term_xx_nd, c.term_xy_nd)
            }
            AtomState::Lower => (0.0, 0.0, 0.0),
        };
        let nonres = nonresonant_shift_with(&atom, &surface, z0, state, &opts)? / gamma;
        Ok(vec![
            num(eta),
            num(z0),
            num(total),
            num(xx),
            num(xy),
            num(nonres),
        ])
    });
    Ok(out)
}

/// Nonresonant force with its far-field asymptote; SI columns when the atom
/// is given by wavelength.
pub fn force(config: &RunConfig) -> Result<Table> {
    let atom = config.atom()?;
    let surface = config.surface()?;
    let opts = config.casimir_options()?;
    let state = config.state(AtomState::Lower);
    let chern = config.chern()?;
    let si = config.si_scale()?;
    let variable = config.sweep.variable;
    height(&atom, variable, 1.0)?;
    let mut header = vec!["z0", "force_numeric", "force_farfield", "repulsion_flag"];
    if si.is_some() {
        header.extend(["z0_m", "force_N"]);
    }
    let state_sign = match state {
        AtomState::Lower => 1.0,
        AtomState::Upper => -1.0,
    };
    let mut out = Table::new(header);
    fill_rows(&mut out, &config.sweep_values(), |v| {
        let (z0, _) = height(&atom, variable, v)?;
        let f = force_numeric(&atom, &surface, z0, state, Channel::Nonresonant, &opts)?;
        let far = state_sign * farfield_force(&atom, chern, z0);
        let flag = if f > 0.0 {
            "1"
        } else if f < 0.0 {
            "-1"
        } else {
            "0"
        };
        let mut row = vec![num(z0), num(f), num(far), flag.to_string()];
        if let Some(s) = &si {
            row.extend([num(s.length_to_si(z0)), num(s.force_to_si(f))]);
        }
        Ok(row)
    });
    Ok(out)
}

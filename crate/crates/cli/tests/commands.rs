use std::path::Path;
use std::process::Command;

use chernpolder_cli::commands;
use chernpolder_cli::si::SiScale;
use chernpolder_cli::RunConfig;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chernpolder"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const CONDUCTIVITY: &str = r#"
[surface.dispersive]
u = 1.0
grid_n = 64

[sweep]
variable = "omega"
min = 0.0
max = 8.0
points = 17
"#;

const SHIFT_C0: &str = r#"
[surface.nondispersive]
C = 0

[atom]
omega10 = 1.0

[sweep]
variable = "eta"
min = 1.0
max = 10.0
points = 5
"#;

const SR88: &str = r#"
[surface.nondispersive]
C = -1

[atom]
transition_wavelength = 707.202e-9
polarization = "right"

[sweep]
variable = "z0"
min = 50.0
max = 400.0
points = 36
"#;

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", CONDUCTIVITY);
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let st = bin()
            .args(["conductivity", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(st.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    assert!(text.starts_with("omega_over_t,re_sigma_xx,im_sigma_xx,re_sigma_xy,im_sigma_xy\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 18);
}

#[test]
fn empty_sweep_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.toml",
        &CONDUCTIVITY.replace("max = 8.0", "max = 0.0"),
    );
    let o = bin()
        .args(["conductivity", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("x.csv"))
        .output()
        .unwrap();
    assert!(!o.status.success());
    let line = String::from_utf8(o.stderr).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["level"], "error");
    assert!(v["message"].as_str().unwrap().contains("sweep"));
}

#[test]
fn unknown_key_is_reported_by_name() {
    let e = RunConfig::from_toml(&CONDUCTIVITY.replace("grid_n", "grid")).unwrap_err();
    assert!(format!("{e:#}").contains("grid"));
}

#[test]
fn below_gap_longitudinal_part_is_small_and_hall_part_flips_with_u() {
    let plus = RunConfig::from_toml(CONDUCTIVITY).unwrap();
    let minus = RunConfig::from_toml(&CONDUCTIVITY.replace("u = 1.0", "u = -1.0")).unwrap();
    let a = commands::conductivity(&plus).unwrap();
    let b = commands::conductivity(&minus).unwrap();
    let (xa, xb) = (
        a.column("re_sigma_xy").unwrap(),
        b.column("re_sigma_xy").unwrap(),
    );
    for (p, m) in xa.iter().zip(&xb) {
        assert!((p + m).abs() <= 1e-12 * p.abs().max(1e-6));
    }
    let (ra, rb) = (a.column("re_sigma_xx").unwrap(), b.column("re_sigma_xx").unwrap());
    for (p, m) in ra.iter().zip(&rb) {
        assert!((p - m).abs() <= 1e-12 * p.abs());
    }
    // Raw broadened values on the 0.5t grid: only a Lorentzian tail below 2t.
    let w = a.column("omega_over_t").unwrap();
    for (w, s) in w.iter().zip(&ra) {
        if *w < 1.6 {
            assert!(s.abs() < 1e-2, "omega = {w}: {s}");
        }
    }
}

#[test]
fn imaginary_axis_sweep() {
    let c = RunConfig::from_toml(&CONDUCTIVITY.replace("\"omega\"", "\"xi\"")).unwrap();
    let t = commands::conductivity(&c).unwrap();
    assert_eq!(t.header[0], "xi_over_t");
    assert!(t.column("im_sigma_xx").unwrap().iter().all(|v| *v == 0.0));
}

#[test]
fn trivial_sheet_gives_zero_shifts() {
    let c = RunConfig::from_toml(SHIFT_C0).unwrap();
    let t = commands::shift(&c).unwrap();
    assert_eq!(t.rows.len(), 5);
    for col in [
        "resonant_shift_nd",
        "term_xx_nd",
        "term_xy_nd",
        "nonresonant_shift_nd",
    ] {
        assert!(t.column(col).unwrap().iter().all(|v| *v == 0.0), "{col}");
    }
}

#[test]
fn shift_rejects_frequency_sweep() {
    let c = RunConfig::from_toml(&SHIFT_C0.replace("\"eta\"", "\"omega\"")).unwrap();
    assert!(commands::shift(&c).is_err());
}

fn sign_changes_at(z: &[f64], f: &[f64]) -> Vec<f64> {
    z.windows(2)
        .zip(f.windows(2))
        .filter(|(_, w)| w[0].signum() != w[1].signum())
        .map(|(z, _)| 0.5 * (z[0] + z[1]))
        .collect()
}

#[test]
fn strontium_force_changes_sign_near_nineteen_microns() {
    let t = commands::force(&RunConfig::from_toml(SR88).unwrap()).unwrap();
    assert_eq!(
        t.header,
        [
            "z0",
            "force_numeric",
            "force_farfield",
            "repulsion_flag",
            "z0_m",
            "force_N"
        ]
    );
    let z = t.column("z0_m").unwrap();
    let far = sign_changes_at(&z, &t.column("force_farfield").unwrap());
    assert_eq!(far.len(), 1);
    assert!((far[0] - 1.9e-5).abs() < 0.1e-5, "{far:?}");
    let num = sign_changes_at(&z, &t.column("force_numeric").unwrap());
    assert_eq!(num.len(), 1);

    let co =
        commands::force(&RunConfig::from_toml(&SR88.replace("C = -1", "C = 1")).unwrap()).unwrap();
    assert!(co
        .column("force_farfield")
        .unwrap()
        .iter()
        .all(|f| *f < 0.0));
    assert!(co
        .column("repulsion_flag")
        .unwrap()
        .iter()
        .all(|f| *f == -1.0));
}

#[test]
fn numeric_force_follows_farfield_beyond_twenty() {
    let cfg = SR88
        .replace("min = 50.0", "min = 20.0")
        .replace("transition_wavelength = 707.202e-9", "omega10 = 1.0");
    let t = commands::force(&RunConfig::from_toml(&cfg).unwrap()).unwrap();
    assert_eq!(t.header.len(), 4);
    let z = t.column("z0").unwrap();
    let (n, f) = (
        t.column("force_numeric").unwrap(),
        t.column("force_farfield").unwrap(),
    );
    for i in 0..z.len() {
        // Skip the neighbourhood of the sign change, where relative error is meaningless.
        if (z[i] * chernpolder_core::ALPHA - 1.25).abs() > 0.2 {
            assert!((n[i] - f[i]).abs() <= 0.05 * f[i].abs(), "z0 = {}", z[i]);
        }
    }
}

#[test]
fn si_wavelength_round_trip() {
    let s = SiScale::from_wavelength(707.202e-9).unwrap();
    let w = s.angular_frequency();
    assert!((w - 2.0 * std::f64::consts::PI * 299_792_458.0 / 707.202e-9).abs() <= 1e-15 * w);
    let back = SiScale::from_angular_frequency(w).unwrap().wavelength();
    assert!((back / 707.202e-9 - 1.0).abs() <= 1e-12);
}

#[test]
fn figure_bundles_have_the_listed_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "f.toml",
        "[sweep]\nvariable = \"eta\"\nmin = 1.0\nmax = 5.0\npoints = 4\n[lattice]\ngrid_n = 64\n",
    );
    for fig in ["fig2a", "fig2b"] {
        let st = bin()
            .args(["figure", fig, "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(st.success());
    }
    let a = std::fs::read_to_string(dir.path().join("fig2a.csv")).unwrap();
    assert_eq!(a.lines().next().unwrap().split(',').count(), 5);
    let b = std::fs::read_to_string(dir.path().join("fig2b.csv")).unwrap();
    assert_eq!(b.lines().next().unwrap(), "eta,total,term_xx,term_xy");

    let cfg1 = write(
        dir.path(),
        "g.toml",
        "[sweep]\nvariable = \"omega\"\nmin = 0.0\nmax = 8.0\npoints = 5\n[lattice]\ngrid_n = 64\n",
    );
    let st = bin()
        .args(["figure", "fig1", "--config"])
        .arg(&cfg1)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(st.success());
    for panel in [
        "fig1a_re_sigma_xx",
        "fig1b_im_sigma_xx",
        "fig1c_re_sigma_xy",
        "fig1d_im_sigma_xy",
    ] {
        let text = std::fs::read_to_string(dir.path().join(format!("{panel}.csv"))).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "omega_over_t,u_plus_t,u_minus_t"
        );
        assert_eq!(text.lines().count(), 6);
    }
    let o = bin()
        .args(["figure", "fig3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!o.status.success());
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::from_path(&path).unwrap_or_else(|e| panic!("{}: {e:#}", path.display()));
        n += 1;
    }
    assert!(n >= 3);
}

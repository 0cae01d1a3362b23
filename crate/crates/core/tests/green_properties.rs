use chernpolder_core::analysis::logspace;
use chernpolder_core::conductivity::DispersiveSurface;
use chernpolder_core::green::{green_imag_axis_scaled, green_real_split, GreenOptions};
use chernpolder_core::reflection::SheetCoupling;
use chernpolder_core::{
    green_farfield, green_imag_axis, green_nondispersive_closed, green_real_freq, QwzModel,
    SurfaceModel, ALPHA,
};
use num_complex::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// Independent transcription of the quantised-sheet result at complex q = ω:
// G_xx = R e^{2iqz}(1/(8z³) − iq/(4z²) − q²/(2z)),  G_xy = −H e^{2iqz}(q²/(2z) + iq/(4z²)).
fn oracle(chern: i64, q: Complex64, z: f64) -> (Complex64, Complex64) {
    let c = chern as f64 * ALPHA;
    let (r, h) = (c * c / (1.0 + c * c), c / (1.0 + c * c));
    let i = Complex64::new(0.0, 1.0);
    let e = (2.0 * i * q * z).exp();
    let xx = r * e * (1.0 / (8.0 * z * z * z) - i * q / (4.0 * z * z) - q * q / (2.0 * z));
    let xy = -h * e * (q * q / (2.0 * z) + i * q / (4.0 * z * z));
    (xx, xy)
}

fn scaled_closed_form(chern: i64, xi: f64, z: f64) -> (f64, f64) {
    let c = chern as f64 * ALPHA;
    let (r, h) = (c * c / (1.0 + c * c), c / (1.0 + c * c));
    let x = 2.0 * xi * z;
    let xx = r * (xi * xi / (4.0 * z) + (x * x + 2.0 * x + 2.0) / (16.0 * z * z * z));
    let xy = h * (xi * xi / (2.0 * z) + xi / (4.0 * z * z));
    (xx, xy)
}

#[test]
fn quadrature_matches_closed_form_over_log_grid() {
    for chern in [1, -1, 3] {
        let s = SurfaceModel::nondispersive(chern);
        for z in logspace(1e-2, 10.0, 7) {
            for xi in logspace(1e-3, 1e3, 9).into_iter().map(|u| u / (2.0 * z)) {
                // e^{2ξz}·G, which stays representable where G underflows.
                let q = green_imag_axis_scaled(&s, xi, z, &GreenOptions::default()).unwrap();
                let (xx, xy) = scaled_closed_form(chern, xi, z);
                assert!(rel(q.xx.re, xx) <= 1e-8, "xx C={chern} xi={xi} z={z}");
                assert!(rel(q.xy.re, xy) <= 1e-8, "xy C={chern} xi={xi} z={z}");
                let c = green_nondispersive_closed(chern, xi, z).unwrap();
                if c.xx.re.abs() > 1e-290 {
                    let u = green_imag_axis(&s, xi, z).unwrap();
                    assert!(rel(u.xx.re, c.xx.re) <= 1e-8 && rel(u.xy.re, c.xy.re) <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn continuation_to_imaginary_frequency() {
    let s = SurfaceModel::nondispersive(1);
    for (w, z) in [(0.4, 1.0), (1.0, 2.0), (3.0, 0.3)] {
        let direct = green_real_freq(&s, w, z).unwrap();
        let (xx, xy) = oracle(1, Complex64::new(w, 0.0), z);
        assert!((direct.xx - xx).norm() < 1e-8 * xx.norm());
        assert!((direct.xy - xy).norm() < 1e-8 * xy.norm());
        // Same oracle at q = iξ against the imaginary-axis integral.
        let xi = w;
        let imag = green_imag_axis(&s, xi, z).unwrap();
        let (xx, xy) = oracle(1, Complex64::new(0.0, xi), z);
        assert!(xx.im.abs() < 1e-15 * xx.norm() && xy.im.abs() < 1e-15 * xy.norm());
        assert!(rel(imag.xx.re, xx.re) < 1e-8 && rel(imag.xy.re, xy.re) < 1e-8);
    }
}

#[test]
fn farfield_form_is_exact_rearrangement() {
    for (xi, z) in [(0.0, 1.0), (5.0, 1.0), (0.1, 30.0), (2.5, 2.0)] {
        let a = green_farfield(1, xi, z).unwrap();
        let b = green_nondispersive_closed(1, xi, z).unwrap();
        assert!(rel(a.xx.re, b.xx.re) < 1e-12);
        assert_eq!(a.xy, b.xy);
    }
}

#[test]
fn dimensional_scaling() {
    let lambda = 7.3;
    for chern in [1, -2] {
        for (xi, z) in [(0.3, 1.1), (2.0, 0.05), (0.0, 4.0)] {
            let a = green_nondispersive_closed(chern, xi, z).unwrap();
            let b = green_nondispersive_closed(chern, xi / lambda, z * lambda).unwrap();
            assert!(rel(b.xx.re * lambda.powi(3), a.xx.re) < 1e-13);
            if xi > 0.0 {
                assert!(rel(b.xy.re * lambda.powi(3), a.xy.re) < 1e-13);
            }
        }
    }
}

#[test]
fn chern_parity_of_quadrature() {
    let (p, m) = (
        SurfaceModel::nondispersive(1),
        SurfaceModel::nondispersive(-1),
    );
    for (xi, z) in [(0.2, 1.0), (3.0, 0.5)] {
        let (a, b) = (
            green_imag_axis(&p, xi, z).unwrap(),
            green_imag_axis(&m, xi, z).unwrap(),
        );
        assert_eq!(a.xx, b.xx);
        assert_eq!(a.xy, -b.xy);
    }
    let (a, b) = (
        green_real_freq(&p, 1.0, 2.0).unwrap(),
        green_real_freq(&m, 1.0, 2.0).unwrap(),
    );
    assert_eq!(a.xx, b.xx);
    assert_eq!(a.xy, -b.xy);
}

#[test]
fn evanescent_waves_do_not_feed_imaginary_part_of_real_sheet() {
    // Quantised sheet: all coefficients real for k_∥ > ω.
    let c = SheetCoupling::quantized(1);
    for (w, z) in [(1.0, 0.3), (1.9, 2.0)] {
        let parts = green_real_split(c, w, z, &GreenOptions::default()).unwrap();
        assert_eq!(parts.evanescent.xx.im, 0.0);
        // xy carries an explicit i: its evanescent part is purely imaginary.
        assert_eq!(parts.evanescent.xy.re, 0.0);
    }
}

#[test]
fn reciprocal_dispersive_sheet_has_no_antisymmetric_part() {
    let d = DispersiveSurface::new(QwzModel::default(), 1e-2, 64)
        .unwrap()
        .reciprocal();
    let s = SurfaceModel::Dispersive(d);
    for z in [0.2, 1.0, 5.0] {
        assert_eq!(
            green_real_freq(&s, 1.9, z).unwrap().xy,
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            green_imag_axis(&s, 0.7, z).unwrap().xy,
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            green_imag_axis(&s, 0.0, z).unwrap().xy,
            Complex64::new(0.0, 0.0)
        );
    }
}

#[test]
fn dispersive_sheet_static_limit_is_continuous() {
    let s = SurfaceModel::dispersive(QwzModel::default(), 1e-2, 64).unwrap();
    let z = 1.5;
    let g0 = green_imag_axis(&s, 0.0, z).unwrap();
    let g1 = green_imag_axis(&s, 1e-7, z).unwrap();
    assert!(rel(g1.xx.re, g0.xx.re) < 1e-5);
    assert!(g1.xy.re.abs() < 1e-6 * g1.xx.re.abs().max(1e-30) + 1e-20);
}

//! Shape statistics for sampled curves: slope-sign changes, oscillatory
//! residuals and correlation.

/// `n` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..n)
            .map(|i| min + (max - min) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` logarithmically spaced points from `min` to `max` inclusive; both > 0.
pub fn logspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    linspace(min.ln(), max.ln(), n)
        .into_iter()
        .map(f64::exp)
        .collect()
}

/// Number of times the sign of the first difference flips along `values`.
/// Flat steps carry the previous sign.
pub fn slope_sign_changes(values: &[f64]) -> usize {
    let mut changes = 0;
    let mut last = 0.0_f64;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        if last != 0.0 && d.signum() != last {
            changes += 1;
        }
        last = d.signum();
    }
    changes
}

/// `values` minus its centred moving average over `window` points (odd).
///
/// Only points with a full window are returned; element `i` of the result
/// belongs to sample `i + window / 2`.
pub fn oscillatory_part(values: &[f64], window: usize) -> Vec<f64> {
    let window = window.max(1) | 1;
    if values.len() < window {
        return Vec::new();
    }
    let half = window / 2;
    let mut sum: f64 = values[..window].iter().sum();
    let mut out = Vec::with_capacity(values.len() - window + 1);
    for i in half..values.len() - half {
        if i > half {
            sum += values[i + half] - values[i - half - 1];
        }
        out.push(values[i] - sum / window as f64);
    }
    out
}

/// Pearson correlation coefficient; `None` for mismatched lengths, fewer than
/// two samples or a constant series.
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return None;
    }
    Some(sab / (saa * sbb).sqrt())
}

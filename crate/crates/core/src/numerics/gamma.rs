use crate::error::{Error, Result};

/// Upper incomplete gamma function Γ(3, x) = ∫ₓ^∞ t² e^{-t} dt.
///
/// For integer order the integral has the exact closed form (x² + 2x + 2)e^{-x}.
pub fn upper_incomplete_gamma3(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!(
            "upper_incomplete_gamma3 requires x >= 0, got {x}"
        )));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok((x * x + 2.0 * x + 2.0) * (-x).exp())
}

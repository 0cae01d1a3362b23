//! Physical constants shared by every module.
//!
//! Everything inside the library works in Gaussian units with ħ = c = 1, so the
//! only dimensionless number that survives is the fine-structure constant.

/// Fine-structure constant α = e²/ħc (CODATA 2018).
pub const ALPHA: f64 = 7.297_352_569_3e-3;

/// Speed of light in m/s (exact, SI definition).
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

/// Quantum of Hall conductance e²/h expressed in units of e²/ħ.
pub const HALL_QUANTUM: f64 = 1.0 / (2.0 * std::f64::consts::PI);

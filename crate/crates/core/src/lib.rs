//! Casimir-Polder interaction between a circularly polarised two-level atom
//! and a Chern-insulator sheet, at zero temperature.
//!
//! Gaussian units with ħ = c = 1. Frequencies, energies and inverse lengths
//! share one unit, usually the hopping t of the lattice model.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN.

pub mod analysis;
pub mod casimir;
pub mod conductivity;
pub mod constants;
pub mod error;
pub mod green;
pub mod lattice;
pub mod numerics;
pub mod reflection;

pub use casimir::{
    farfield_force, farfield_shift, force_numeric, nondimensionalize, nonresonant_shift,
    repulsion_window, resonant_shift, resonant_shift_components, AtomState, CasimirOptions,
    Channel, CpResult, ForceMethod, Nondimensional, Polarization, ResonantComponents, TwoLevelAtom,
};
pub use conductivity::{
    kubo_sigma, sigma_imag_axis, sigma_nondispersive, ConductivityTensor, DispersiveSurface,
    FrequencyArgument, KuboResult, KuboTable, SurfaceModel,
};
pub use constants::{ALPHA, HALL_QUANTUM, SPEED_OF_LIGHT_SI};
pub use error::{Error, Result};
pub use green::{
    green_farfield, green_imag_axis, green_nondispersive_closed, green_nondispersive_real,
    green_real_freq, GreenOptions, GreenPair, HeightDerivative,
};
pub use lattice::{Direction, QwzModel};
pub use numerics::{NonConvergence, QuadratureSpec};
pub use reflection::{
    reflection_matrix, reflection_nondispersive, KinematicPoint, ReflectionMatrix,
};

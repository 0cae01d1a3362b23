//! Shared numerical kernels: adaptive Gauss-Kronrod quadrature on finite and
//! semi-infinite intervals, and the order-3 upper incomplete gamma function.

mod gamma;
mod quadrature;

pub use gamma::upper_incomplete_gamma3;
pub use quadrature::{
    adaptive_quad, adaptive_quad_points, semi_infinite_quad, NonConvergence, QuadValue, Quadrature,
    QuadratureSpec,
};
